"""The word family A_n and the limit sequence u.

A_1 = 10111 and A_{n+1} = A_n O_n A_n I_n A_n, where O_n and I_n are the
all-zero and all-one words of length 5**n.  Every A_n is a prefix of
A_{n+1}, so u is the common extension.  Words are numpy uint8 arrays of
0/1 symbols.
"""
from functools import lru_cache

import numpy as np

from .. import kernels
from ..errors import ParameterError, ResourceError

A1 = np.array([1, 0, 1, 1, 1], dtype=np.uint8)
DEFAULT_BUDGET_EXPONENT = 10
# below this length a word is cheap enough to materialize outright
_SMALL = 5 ** 5


def as_word(word):
    """Coerce a 0/1 string, sequence or array into a uint8 array."""
    if isinstance(word, np.ndarray):
        arr = word if word.dtype == np.uint8 else word.astype(np.uint8)
    elif isinstance(word, (str, bytes)):
        raw = word.encode() if isinstance(word, str) else word
        arr = np.frombuffer(raw, dtype=np.uint8) - 48
    else:
        arr = np.asarray(list(word), dtype=np.uint8)
    if arr.size and arr.max() > 1:
        raise ParameterError("words are over the alphabet {0,1}")
    return arr


def word_text(word):
    """ASCII 0/1 rendering of a word."""
    return (np.asarray(word, dtype=np.uint8) + 48).tobytes().decode()


class WordSystem:
    """Cached access to A_n, O_n, I_n and slices of u under a size budget."""

    def __init__(self, budget_exponent=DEFAULT_BUDGET_EXPONENT):
        if budget_exponent < 1:
            raise ParameterError("budget exponent must be >= 1")
        self.budget_exponent = budget_exponent
        self.budget = 5 ** budget_exponent
        self._cache = {1: A1.copy()}
        self._cache[1].setflags(write=False)

    def _check(self, n):
        if n < 1:
            raise ParameterError(f"word index must be >= 1, got {n}")
        if n > self.budget_exponent:
            raise ResourceError(
                f"A_{n} has 5**{n} symbols, over the budget 5**{self.budget_exponent}"
            )

    def word(self, n):
        """A_n as a read-only array."""
        self._check(n)
        if n not in self._cache:
            prev = self.word(n - 1)
            size = len(prev)
            out = np.empty(5 * size, dtype=np.uint8)
            out[:size] = prev
            out[size:2 * size] = 0
            out[2 * size:3 * size] = prev
            out[3 * size:4 * size] = 1
            out[4 * size:] = prev
            out.setflags(write=False)
            self._cache[n] = out
        return self._cache[n]

    def symbol(self, i):
        """u[i] by descending through the five-block recurrence."""
        if i < 0:
            raise ParameterError("index must be nonnegative")
        if i >= self.budget:
            raise ResourceError(f"index {i} lies beyond the budget 5**{self.budget_exponent}")
        n = 1
        while 5 ** n <= i:
            n += 1
        while n > 1:
            part, i = divmod(i, 5 ** (n - 1))
            if part == 1:
                return 0
            if part == 3:
                return 1
            n -= 1
        return int(A1[i])

    def slice_array(self, i, j):
        """u[i..j] inclusive, resolved block by block without building A_n."""
        if i < 0 or j < i:
            raise ParameterError(f"bad slice bounds ({i}, {j})")
        if j >= self.budget:
            raise ResourceError(f"index {j} lies beyond the budget 5**{self.budget_exponent}")
        n = 1
        while 5 ** n <= j:
            n += 1
        out = np.empty(j - i + 1, dtype=np.uint8)
        self._fill(out, n, i, j + 1, 0)
        return out

    def _fill(self, out, n, lo, hi, at):
        # writes A_n[lo:hi] into out[at:]
        if 5 ** n <= _SMALL:
            out[at:at + hi - lo] = self.word(n)[lo:hi]
            return
        size = 5 ** (n - 1)
        for part in range(5):
            start, stop = part * size, (part + 1) * size
            a, b = max(lo, start), min(hi, stop)
            if a >= b:
                continue
            if part == 1:
                out[at + a - lo:at + b - lo] = 0
            elif part == 3:
                out[at + a - lo:at + b - lo] = 1
            else:
                self._fill(out, n - 1, a - start, b - start, at + a - lo)

    def u_slice(self, i, j):
        return word_text(self.slice_array(i, j))

    def prefix(self, length):
        """First ``length`` symbols of u."""
        if length <= 0:
            return np.zeros(0, dtype=np.uint8)
        n = 1
        while 5 ** n < length:
            n += 1
        if n <= self.budget_exponent:
            return self.word(n)[:length]
        return self.slice_array(0, length - 1)

    def suffix_of_word(self, n, length):
        """Last ``length`` symbols of A_n (A_n ends with every shorter A_j)."""
        if length > 5 ** n:
            raise ParameterError(f"A_{n} is shorter than {length}")
        j = 1
        while 5 ** j < length:
            j += 1
        return self.word(min(j, n))[-length:] if length else np.zeros(0, np.uint8)

    # -- block counting ---------------------------------------------------

    def block_count_recursive(self, k, block):
        """Occurrences of ``block`` in A_k via the five-block recurrence.

        count(A_{k+1}) = 3 count(A_k) + count(O_k) + count(I_k) + the
        occurrences straddling the four internal junctions.
        """
        block = as_word(block)
        return self._count_rec(k, block.tobytes())

    @lru_cache(maxsize=None)
    def _count_rec(self, k, key):
        block = np.frombuffer(key, dtype=np.uint8)
        m = len(block)
        if m == 0:
            raise ParameterError("empty block")
        if k < 1:
            raise ParameterError("word index must be >= 1")
        size = 5 ** (k - 1)
        if k == 1 or size < m:
            # junction windows overlap once blocks outgrow the pieces
            if 5 ** k > self.budget:
                raise ResourceError(f"A_{k} exceeds the budget")
            return kernels.block_count(self.word(k), block)
        inner = 3 * self._count_rec(k - 1, key)
        run = size - m + 1
        if not block.any():
            inner += run
        elif block.all():
            inner += run
        w = m - 1
        if w == 0:
            return inner
        head = self.prefix(w)
        tail = self.suffix_of_word(k - 1, w)
        zeros = np.zeros(w, dtype=np.uint8)
        ones = np.ones(w, dtype=np.uint8)
        # A O | O A | A I | I A junctions
        for left, right in ((tail, zeros), (zeros, head), (tail, ones), (ones, head)):
            window = np.concatenate([left, right])
            inner += kernels.block_count(window, block)
        return inner


_default = None


def default_words():
    global _default
    if _default is None:
        _default = WordSystem()
    return _default


def build_word(n, words=None):
    """A_n as an ASCII 0/1 string."""
    return word_text((words or default_words()).word(n))


def block_count(word, block):
    """Overlapping occurrences of ``block`` in ``word`` (naive scan)."""
    word, block = as_word(word), as_word(block)
    if len(block) == 0:
        raise ParameterError("empty block")
    if len(block) > len(word):
        raise ParameterError(f"block of length {len(block)} is longer than the word ({len(word)})")
    return int(kernels.block_count(np.ascontiguousarray(word), np.ascontiguousarray(block)))


def u_slice(i, j, words=None):
    return (words or default_words()).u_slice(i, j)
