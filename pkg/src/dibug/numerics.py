"""64-bit two's-complement integer arithmetic with C truncation semantics."""

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1
_MASK = (1 << 64) - 1


def wrap(v: int) -> int:
    """Reduce an arbitrary Python int to a signed 64-bit value."""
    v &= _MASK
    return v - (1 << 64) if v > INT64_MAX else v


def div_trunc(a: int, b: int) -> int:
    """Signed division truncating toward zero; caller guarantees b != 0."""
    q = abs(a) // abs(b)
    return wrap(q if (a < 0) == (b < 0) else -q)


def mod_trunc(a: int, b: int) -> int:
    """Remainder matching div_trunc: a == div_trunc(a,b)*b + mod_trunc(a,b)."""
    return wrap(a - div_trunc(a, b) * b)
