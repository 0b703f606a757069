"""Kernel selection: compiled extension if built, pure Python otherwise."""

try:
    from ._kernel_cy import add_terms, mul_terms, BACKEND  # noqa: F401
except ImportError:  # pragma: no cover - depends on build environment
    from ._kernel_py import add_terms, mul_terms, BACKEND  # noqa: F401
