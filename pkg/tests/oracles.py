"""Independent reference implementations used only by the tests.

Nothing here shares code with the package: sets are plain Python sets,
words are strings and distances are computed by brute force.
"""
from fractions import Fraction
from itertools import product


def enumerate_images(maps, x, n):
    """All m**n compositions applied to x, as a set (no step-wise dedup)."""
    out = set()
    for word in product(maps, repeat=n):
        v = x
        for f in word:
            v = f(v)
        out.add(v)
    return out


def brute_dist(A, B):
    return max(min(abs(a - b) for b in B) for a in A)


def brute_hausdorff(A, B):
    return max(brute_dist(A, B), brute_dist(B, A))


def tent(x):
    return 2 * x if x <= Fraction(1, 2) else 2 - 2 * x


def tent_power(x, n):
    for _ in range(n):
        x = tent(x)
    return x


def naive_word(n):
    w = "10111"
    for k in range(1, n):
        size = len(w)
        w = w + "0" * size + w + "1" * size + w
    return w


def naive_count(word, block):
    return sum(1 for i in range(len(word) - len(block) + 1) if word.startswith(block, i))


def rho_strings(s, t):
    """sum_i [s_i != t_i] / 2**i over the common length."""
    return sum((Fraction(1, 2 ** i) for i, (a, b) in enumerate(zip(s, t)) if a != b), Fraction(0))
