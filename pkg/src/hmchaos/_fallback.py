"""numpy implementations of the compiled kernels (same contracts)."""
import numpy as np


def match_mask(word, block):
    word = np.asarray(word, dtype=np.uint8)
    block = np.asarray(block, dtype=np.uint8)
    positions = len(word) - len(block) + 1
    if len(block) == 0 or positions <= 0:
        return np.zeros(max(positions, 0), dtype=np.uint8)
    mask = np.ones(positions, dtype=bool)
    for j, symbol in enumerate(block):
        mask &= word[j:j + positions] == symbol
    return mask.astype(np.uint8)


def block_count(word, block):
    return int(match_mask(word, block).sum())


def shift_distance_numerators(x, y, count, depth):
    if depth < 1 or depth > 63:
        raise ValueError("depth must lie in [1, 63]")
    if count <= 0:
        return np.zeros(0, dtype=np.uint64)
    need = count + depth - 1
    if len(x) < need or len(y) < need:
        raise ValueError("orbits too short for requested count and depth")
    diff = (np.asarray(x[:need]) != np.asarray(y[:need])).astype(np.uint64)
    out = np.zeros(count, dtype=np.uint64)
    for j in range(depth):
        out |= diff[j:j + count] << np.uint64(depth - 1 - j)
    return out
