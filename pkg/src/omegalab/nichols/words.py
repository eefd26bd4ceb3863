"""Words in the generators e_i and their structural tables."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .. import rootdata as rd
from ..errors import NotPositiveCone


@lru_cache(maxsize=None)
def words_of(cd, mu) -> tuple:
    """All words of degree ``mu`` in lexicographic order."""
    mu = tuple(mu)
    if not rd.is_positive(mu):
        raise NotPositiveCone(f"{mu} is not in the positive cone")
    out = []
    counts = list(mu)
    total = sum(counts)
    prefix = []

    def rec():
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for i in range(len(counts)):
            if counts[i]:
                counts[i] -= 1
                prefix.append(i)
                rec()
                prefix.pop()
                counts[i] += 1

    rec()
    return tuple(out)


@lru_cache(maxsize=None)
def word_index(cd, mu) -> dict:
    return {w: k for k, w in enumerate(words_of(cd, mu))}


def degree(cd, word):
    out = [0] * cd.rank
    for i in word:
        out[i] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def partial_table(cd, mu) -> tuple:
    """Entries of the skew derivations d_i : words(mu) -> words(mu - a_i).

    Returns a tuple over i of lists ``(w_index, src_index, k)`` meaning the
    letter at position k of word w equals i and deleting it gives word src.
    Empty lists for i with ``mu - a_i`` outside the cone.
    """
    ws = words_of(cd, mu)
    out = []
    for i in range(cd.rank):
        lower = list(mu)
        lower[i] -= 1
        if lower[i] < 0:
            out.append(())
            continue
        idx = word_index(cd, tuple(lower))
        entries = []
        for wi, w in enumerate(ws):
            for k, letter in enumerate(w):
                if letter == i:
                    entries.append((wi, idx[w[:k] + w[k + 1:]], k))
        out.append(tuple(entries))
    return tuple(out)


def splits(word, left_degree):
    """Position subsets L of ``word`` whose letters have degree ``left_degree``.

    Yields ``(L, R)`` as sorted tuples of positions.
    """
    n = len(word)
    size = sum(left_degree)
    target = tuple(left_degree)
    for L in combinations(range(n), size):
        deg = [0] * len(target)
        for p in L:
            deg[word[p]] += 1
        if tuple(deg) == target:
            Ls = set(L)
            yield L, tuple(p for p in range(n) if p not in Ls)
