"""Straightening of words in divided powers of negative root vectors into the
ordered PBW basis f^I.

Only pairs of root intervals that concatenate fail to commute. For A = (i..j),
B = (j+1..k) and C = (i..k) the relation f_B f_A = f_A f_B + f_C holds with f_C
commuting with both, which lifts to divided powers as

    f_B^(a) f_A^(b) = sum_m f_A^(b-m) f_B^(a-m) f_C^(m)
    f_A^(b) f_B^(a) = sum_m (-1)^m f_B^(a-m) f_A^(b-m) f_C^(m)

Same-root neighbours merge as f^(a) f^(b) = C(a+b, a) f^(a+b).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Literal, Mapping, Sequence

from weylmod.config import DEFAULT_MAX_PBW_TERMS
from weylmod.errors import InvalidInputError, ResourceCapError
from weylmod.monomial import ExponentVector, MonomialIndex, i_of_k, is_in_pi, layout, sort_key
from weylmod.rootsys import RootInterval, check_rank, num_positive_roots, positive_roots_ordered, root_position

Strategy = Literal["leftmost", "rightmost"]
STRATEGIES: tuple[str, ...] = ("leftmost", "rightmost")

# Internal words are tuples of (root position, power) with every power >= 1.
_Word = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class FactorWord:
    rank: int
    factors: tuple[tuple[RootInterval, int], ...]

    def __post_init__(self) -> None:
        check_rank(self.rank)
        cleaned = []
        for root, power in self.factors:
            if not isinstance(root, RootInterval):
                root = RootInterval(*root)
            if root.j > self.rank:
                raise InvalidInputError(f"Root {root.label()} does not exist at rank {self.rank}.")
            if int(power) < 1:
                raise InvalidInputError(f"Factor {root.label()} has power {power}; powers must be >= 1.")
            cleaned.append((root, int(power)))
        object.__setattr__(self, "factors", tuple(cleaned))

    def __add__(self, other: "FactorWord") -> "FactorWord":
        if self.rank != other.rank:
            raise InvalidInputError("Cannot concatenate words of different rank.")
        return FactorWord(self.rank, self.factors + other.factors)

    def positions(self) -> _Word:
        return tuple((root_position(root.i, root.j), power) for root, power in self.factors)


@dataclass(frozen=True)
class PBWPolynomial:
    rank: int
    terms: Mapping[ExponentVector, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        check_rank(self.rank)
        size = num_positive_roots(self.rank)
        cleaned: dict[ExponentVector, int] = {}
        for key, coeff in self.terms.items():
            key = tuple(int(v) for v in key)
            if len(key) != size:
                raise InvalidInputError(f"PBW exponent {list(key)} must have length {size}.")
            if coeff:
                cleaned[key] = int(coeff)
        object.__setattr__(self, "terms", cleaned)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, I: Sequence[int]) -> int:
        return self.terms.get(tuple(I), 0)

    def __add__(self, other: "PBWPolynomial") -> "PBWPolynomial":
        if self.rank != other.rank:
            raise InvalidInputError("Cannot add polynomials of different rank.")
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            out[key] = out.get(key, 0) + coeff
        return PBWPolynomial(self.rank, out)

    def scaled(self, factor: int) -> "PBWPolynomial":
        return PBWPolynomial(self.rank, {k: c * factor for k, c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[ExponentVector, int]]:
        """Terms in ascending order, leading term last."""
        return sorted(self.terms.items(), key=lambda kv: sort_key(kv[0]))


@lru_cache(maxsize=None)
def structure_table(l: int) -> dict[tuple[int, int], tuple[int, int]]:
    """(position of x, position of y) -> (sign, position of C) for every concatenating pair."""
    roots = positive_roots_ordered(l)
    table: dict[tuple[int, int], tuple[int, int]] = {}
    for a in roots:
        for b in roots:
            if a.concatenates(b):
                pa, pb, pc = root_position(a.i, a.j), root_position(b.i, b.j), root_position(a.i, b.j)
                table[(pb, pa)] = (1, pc)
                table[(pa, pb)] = (-1, pc)
    return table


@lru_cache(maxsize=1 << 16)
def _swap(l: int, x: int, a: int, y: int, b: int) -> tuple[tuple[_Word, int], ...]:
    entry = structure_table(l).get((x, y))
    if entry is None:
        return (((y, b), (x, a)), 1),
    sign, c = entry
    out = []
    for m in range(min(a, b) + 1):
        word = tuple((p, e) for p, e in ((y, b - m), (x, a - m), (c, m)) if e)
        out.append((word, sign**m))
    return tuple(out)


def _check_root(l: int, root: RootInterval) -> RootInterval:
    if not isinstance(root, RootInterval):
        root = RootInterval(*root)
    if root.j > l:
        raise InvalidInputError(f"Root {root.label()} does not exist at rank {l}.")
    return root


def swap_pair(l: int, x: RootInterval, a: int, y: RootInterval, b: int) -> list[tuple[FactorWord, int]]:
    """Rewrite f_x^(a) f_y^(b) as a combination of words starting with f_y."""
    l = check_rank(l)
    x, y = _check_root(l, x), _check_root(l, y)
    if a < 1 or b < 1:
        raise InvalidInputError("swap_pair needs positive powers.")
    if x == y:
        raise InvalidInputError("swap_pair needs two distinct roots; equal roots merge instead.")
    roots = positive_roots_ordered(l)
    out = []
    for word, coeff in _swap(l, root_position(x.i, x.j), a, root_position(y.i, y.j), b):
        out.append((FactorWord(l, tuple((roots[p], e) for p, e in word)), coeff))
    return out


def _find_redex(word: _Word, strategy: str) -> int | None:
    indices = range(len(word) - 1)
    if strategy == "rightmost":
        indices = reversed(indices)
    for t in indices:
        if word[t][0] >= word[t + 1][0]:
            return t
    return None


def _to_exponent(word: _Word, size: int) -> ExponentVector:
    out = [0] * size
    for p, e in word:
        out[p] = e
    return tuple(out)


def _straighten_words(
    l: int,
    start: Iterable[tuple[_Word, int]],
    max_terms: int,
    strategy: str,
) -> dict[ExponentVector, int]:
    if strategy not in STRATEGIES:
        raise InvalidInputError(f"Unknown rewriting strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}.")
    size = num_positive_roots(l)
    pending: dict[_Word, int] = {}
    for word, coeff in start:
        pending[word] = pending.get(word, 0) + coeff
    result: dict[ExponentVector, int] = {}
    # Every rewrite either merges two letters or replaces an inversion x > y by words whose
    # power sum is no larger; when the power sum is equal, the new word has one inversion
    # fewer. (power sum, length, inversions) therefore decreases lexicographically.
    while pending:
        word, coeff = pending.popitem()
        if not coeff:
            continue
        t = _find_redex(word, strategy)
        if t is None:
            key = _to_exponent(word, size)
            total = result.get(key, 0) + coeff
            if total:
                result[key] = total
            else:
                result.pop(key, None)
            continue
        (x, a), (y, b) = word[t], word[t + 1]
        head, tail = word[:t], word[t + 2:]
        if x == y:
            replacements: tuple[tuple[_Word, int], ...] = (((x, a + b),), comb(a + b, a)),
        else:
            replacements = _swap(l, x, a, y, b)
        for middle, factor in replacements:
            new_word = head + middle + tail
            total = pending.get(new_word, 0) + coeff * factor
            if total:
                pending[new_word] = total
            else:
                pending.pop(new_word, None)
        if len(pending) + len(result) > max_terms:
            raise ResourceCapError("PBW term count", max_terms)
    return result


def straighten(
    w: FactorWord,
    *,
    max_terms: int = DEFAULT_MAX_PBW_TERMS,
    strategy: Strategy = "leftmost",
) -> PBWPolynomial:
    terms = _straighten_words(w.rank, [(w.positions(), 1)], max_terms, strategy)
    return PBWPolynomial(w.rank, terms)


def word_of_exponent(I: Sequence[int], l: int) -> FactorWord:
    """The normal-ordered word f^I."""
    roots = positive_roots_ordered(l)
    if len(I) != len(roots):
        raise InvalidInputError(f"PBW exponent {list(I)} must have length {len(roots)}.")
    return FactorWord(l, tuple((root, int(e)) for root, e in zip(roots, I) if e))


def multiply(
    p: PBWPolynomial,
    q: PBWPolynomial,
    *,
    max_terms: int = DEFAULT_MAX_PBW_TERMS,
    strategy: Strategy = "leftmost",
) -> PBWPolynomial:
    if p.rank != q.rank:
        raise InvalidInputError("Cannot multiply polynomials of different rank.")
    start = []
    for I, c in p.terms.items():
        left = word_of_exponent(I, p.rank).positions()
        for J, d in q.terms.items():
            start.append((left + word_of_exponent(J, q.rank).positions(), c * d))
    return PBWPolynomial(p.rank, _straighten_words(p.rank, start, max_terms, strategy))


def theta_word(K: MonomialIndex) -> FactorWord:
    """theta^K as written left to right: block b = 1 first, subscripts descending within a block."""
    cells = layout(K.rank).cells
    return FactorWord(K.rank, tuple((RootInterval(i, i), k) for (i, _j), k in zip(cells, K.entries) if k))


def theta_expand(K: MonomialIndex, *, max_terms: int = DEFAULT_MAX_PBW_TERMS) -> PBWPolynomial:
    if not is_in_pi(K):
        raise InvalidInputError(f"theta expansion is restricted to K in Pi (got K={K}).")
    return straighten(theta_word(K), max_terms=max_terms)


def leading(p: PBWPolynomial) -> tuple[ExponentVector, int]:
    if p.is_zero():
        raise InvalidInputError("The zero polynomial has no leading term.")
    key = max(p.terms, key=sort_key)
    return key, p.terms[key]


def verify_leading_term(K: MonomialIndex, *, max_terms: int = DEFAULT_MAX_PBW_TERMS) -> bool:
    if not is_in_pi(K):
        raise InvalidInputError(f"Leading-term check requires K in Pi (got K={K}).")
    return leading(theta_expand(K, max_terms=max_terms)) == (i_of_k(K), 1)


_FACTOR_RE = re.compile(r"^f(\d+)(?:_(\d+))?(?:\^\(?(\d+)\)?)?$")


def parse_word(text: str, l: int) -> FactorWord:
    """Parse "f2^2,f1_3^1": f<i>[_<j>][^<power>], power defaults to 1."""
    l = check_rank(l)
    factors = []
    for chunk in (part.strip() for part in text.split(",")):
        if not chunk:
            continue
        match = _FACTOR_RE.match(chunk)
        if match is None:
            raise InvalidInputError(f"Cannot parse factor {chunk!r}; expected f<i>[_<j>][^<power>].")
        i = int(match.group(1))
        j = int(match.group(2)) if match.group(2) else i
        power = int(match.group(3)) if match.group(3) else 1
        if i < 1 or j < i:
            raise InvalidInputError(f"Factor {chunk!r} does not name a positive root.")
        factors.append((RootInterval(i, j), power))
    if not factors:
        raise InvalidInputError("A word needs at least one factor.")
    return FactorWord(l, tuple(factors))


def render_word(w: FactorWord) -> str:
    if not w.factors:
        return "1"
    return " ".join(f"{root.label()}^({power})" for root, power in w.factors)


def render_polynomial(p: PBWPolynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for I, coeff in reversed(p.sorted_terms()):
        monomial = render_word(word_of_exponent(I, p.rank))
        if coeff == 1:
            parts.append(monomial)
        elif coeff == -1:
            parts.append(f"-{monomial}")
        else:
            parts.append(f"{coeff} {monomial}")
    return " + ".join(parts).replace("+ -", "- ")
