"""Python surface of the pseudospectral derivative-NLS core."""

try:
    from gdnls._gdnls import *  # noqa: F401,F403
except ImportError:  # pragma: no cover - build-tree layout
    from _gdnls import *  # noqa: F401,F403
