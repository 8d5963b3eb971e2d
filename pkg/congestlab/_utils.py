import json
import math


def is_jsonable(x):
    try:
        json.dumps(x)
        return True
    except (TypeError, ValueError):
        return False


def norm_edge(u, v):
    return (u, v) if u < v else (v, u)


def ceil_div(a, b):
    return -(-a // b)


def log2_ceil(n):
    """Smallest L with 2**L >= n (0 for n <= 1)."""
    return max(0, (n - 1).bit_length())


def bit_width(value):
    """Bits needed to write every integer in 0..value."""
    return max(1, int(value).bit_length())


def binom(n, k):
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
