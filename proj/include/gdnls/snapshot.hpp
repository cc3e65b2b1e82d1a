#pragma once

#include <string>

#include "gdnls/field.hpp"

namespace gdnls {

// Binary single-field snapshot. Layout (little-endian):
//   bytes 0-5   magic "GDNLS1"
//   u32         n_points
//   f64         domain_length
//   f64         time
//   f64         sigma
//   n_points x (f64 re, f64 im) samples in node order.
struct SnapshotMeta {
  double time = 0.0;
  double sigma = 0.0;
};

void write_snapshot(const std::string& path, const Field& f, double time,
                    double sigma);
Field read_snapshot(const std::string& path, SnapshotMeta* meta = nullptr);

}  // namespace gdnls
