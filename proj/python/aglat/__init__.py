"""Approximate-GCD lattice workbench.

Thin Python layer over the native ``aglat_core`` module: two homomorphic
bit-encryption schemes, exact integral lattice reduction with transform
tracking, the plaintext-recovery lattice attack, reduction-quality
estimators, and a deterministic experiment harness.

Arbitrary-precision values pass as ordinary Python ints.  Structured
experiment reports are plain dicts whose big integers are decimal strings.
"""

try:  # installed layout: the native module sits inside this package
    from . import aglat_core as _core  # type: ignore[attr-defined]
except ImportError:  # development layout: module on sys.path (build tree)
    import aglat_core as _core

globals().update({name: getattr(_core, name) for name in dir(_core)
                  if not name.startswith("_")})

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "0.1.0"
