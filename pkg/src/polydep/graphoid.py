"""Dependence base of a polytree and its closure under the CWT graphoid rules.

The closure is a brute-force oracle: it forward-chains the rules, asking
``sep`` for every independence antecedent, until nothing new appears.
Internally statements are triples of bitmasks.
"""

from __future__ import annotations

import enum
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator

from .errors import EmptySetError, OverlapError, UniverseTooLargeError
from .graph import Dag, Polytree, topological_order
from .separation import reachable

CLOSURE_MAX_NODES = 12


class Polarity(str, enum.Enum):
    DEPENDENCE = "dependence"
    INDEPENDENCE = "independence"


class Rule(str, enum.Enum):
    SYMMETRY = "symmetry"
    DECOMPOSITION = "decomposition"
    WEAK_UNION = "weak_union"
    CONTRACTION1 = "contraction1"
    CONTRACTION2 = "contraction2"
    INTERSECTION = "intersection"
    COMPOSITION = "composition"
    WEAK_TRANSITIVITY1 = "weak_transitivity1"
    WEAK_TRANSITIVITY2 = "weak_transitivity2"
    BASE = "base"


UNARY_RULES = (
    Rule.SYMMETRY,
    Rule.DECOMPOSITION,
    Rule.WEAK_UNION,
    Rule.CONTRACTION1,
    Rule.CONTRACTION2,
    Rule.INTERSECTION,
    Rule.COMPOSITION,
)
BINARY_RULES = (Rule.WEAK_TRANSITIVITY1, Rule.WEAK_TRANSITIVITY2)


def _key(s: frozenset[int]) -> tuple[int, ...]:
    return tuple(sorted(s))


@dataclass(frozen=True)
class Statement:
    """``X ⊥̸ Y | Z`` or ``X ⊥⊥ Y | Z``, stored modulo symmetry.

    Construct through :meth:`dependence` / :meth:`independence`, which put the
    lexicographically smaller of X and Y first.
    """

    polarity: Polarity
    x: frozenset[int]
    y: frozenset[int]
    z: frozenset[int]

    @classmethod
    def make(cls, polarity, x, y, z=()) -> "Statement":
        x, y, z = frozenset(x), frozenset(y), frozenset(z)
        if not x:
            raise EmptySetError("X")
        if not y:
            raise EmptySetError("Y")
        for a, b in ((x, y), (x, z), (y, z)):
            if a & b:
                raise OverlapError(min(a & b))
        if _key(y) < _key(x):
            x, y = y, x
        return cls(Polarity(polarity), x, y, z)

    @classmethod
    def dependence(cls, x, y, z=()) -> "Statement":
        return cls.make(Polarity.DEPENDENCE, x, y, z)

    @classmethod
    def independence(cls, x, y, z=()) -> "Statement":
        return cls.make(Polarity.INDEPENDENCE, x, y, z)

    @property
    def is_dependence(self) -> bool:
        return self.polarity is Polarity.DEPENDENCE

    def sort_key(self):
        return (self.polarity.value, _key(self.x), _key(self.y), _key(self.z))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def format(self, g: Dag) -> str:
        symbol = "!_||_" if self.is_dependence else "_||_"
        text = f"{g.format_set(self.x)} {symbol} {g.format_set(self.y)}"
        if self.z:
            text += f" | {g.format_set(self.z)}"
        return text

    def to_dict(self, g: Dag) -> dict:
        return {
            "polarity": self.polarity.value,
            "x": [g.name(i) for i in sorted(self.x)],
            "y": [g.name(i) for i in sorted(self.y)],
            "z": [g.name(i) for i in sorted(self.z)],
        }


def dependence_base(pt: Polytree, order=None) -> set[Statement]:
    """One dependence per (node B, parent A): ``A ∪ (Pre(B) \\ Pa(B)) ⊥̸ B | Pa(B) \\ A``."""
    if order is None:
        order = topological_order(pt)
    order = [pt.index(v) for v in order]
    if sorted(order) != list(range(pt.n)):
        raise ValueError("order must be a permutation of the nodes")
    position = {v: k for k, v in enumerate(order)}
    for p, c in pt.edges:
        if position[p] > position[c]:
            raise ValueError(f"order is not topological: {pt.name(c)} precedes its parent {pt.name(p)}")
    out = set()
    for k, b in enumerate(order):
        pa = frozenset(pt.parents(b))
        rest = frozenset(order[:k]) - pa
        for a in pa:
            out.add(Statement.dependence({a} | rest, {b}, pa - {a}))
    return out


# -- bitmask machinery ---------------------------------------------------------

def _mask(s: Iterable[int]) -> int:
    m = 0
    for i in s:
        m |= 1 << i
    return m


def _unmask(m: int) -> frozenset[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return frozenset(out)


def _subsets(m: int) -> Iterator[int]:
    """Non-empty subsets of ``m``."""
    s = m
    while s:
        yield s
        s = (s - 1) & m


def _proper_splits(m: int) -> Iterator[tuple[int, int]]:
    """Ordered pairs ``(part, m - part)`` with both parts non-empty."""
    for s in _subsets(m):
        if s != m:
            yield s, m & ~s


SepMask = Callable[[int, int, int], bool]


def _unary(rule: Rule, x: int, y: int, z: int, sep: SepMask, universe: int) -> Iterator[tuple[int, int, int]]:
    """One application of ``rule`` to ``x ⊥̸ y | z`` acting on the y side."""
    if rule is Rule.SYMMETRY:
        yield y, x, z
    elif rule is Rule.DECOMPOSITION:
        for w in _subsets(universe & ~(x | y | z)):
            yield x, y | w, z
    elif rule is Rule.WEAK_UNION:
        for w in _subsets(z):
            yield x, y | w, z & ~w
    elif rule is Rule.CONTRACTION1:
        for yy, w in _proper_splits(y):
            if sep(x, yy, z | w):
                yield x, w, z
    elif rule is Rule.CONTRACTION2:
        for yy, w in _proper_splits(y):
            if sep(x, w, z):
                yield x, yy, z | w
    elif rule is Rule.INTERSECTION:
        for yy, w in _proper_splits(y):
            if sep(x, yy, z | w):
                yield x, w, z | yy
    elif rule is Rule.COMPOSITION:
        for yy, w in _proper_splits(y):
            if sep(x, w, z):
                yield x, yy, z
    else:
        raise ValueError(f"{rule.value} is not a single-premise rule")


def _transitive(rule: Rule, x: int, v: int, y: int, z: int, sep: SepMask) -> Iterator[tuple[int, int, int]]:
    """Weak transitivity from ``x ⊥̸ v | z`` and ``v ⊥̸ y | z`` (v a single node)."""
    if x & y:
        return
    if rule is Rule.WEAK_TRANSITIVITY1:
        if sep(x, y, z):
            yield x, y, z | v
    elif rule is Rule.WEAK_TRANSITIVITY2:
        if sep(x, y, z | v):
            yield x, y, z
    else:
        raise ValueError(f"{rule.value} is not a weak transitivity rule")


def _is_single(m: int) -> bool:
    return m != 0 and m & (m - 1) == 0


def _canon(x: int, y: int, z: int) -> tuple[int, int, int]:
    # disjoint sides: the one holding the smaller lowest index sorts first
    return (x, y, z) if (x & -x) < (y & -y) else (y, x, z)


def mask_sep_oracle(g: Dag) -> SepMask:
    """Cached d-separation over bitmasks; an empty side is trivially separated."""

    @lru_cache(maxsize=None)
    def sep(x: int, y: int, z: int) -> bool:
        if not x or not y:
            return True
        return not (reachable(g, _unmask(x), _unmask(z)) & _unmask(y))

    return sep


def set_sep_oracle(g: Dag) -> Callable[[frozenset, frozenset, frozenset], bool]:
    sep = mask_sep_oracle(g)
    return lambda x, y, z: sep(_mask(x), _mask(y), _mask(z))


def apply_rule(rule: Rule, premises, sep_oracle, universe) -> set[Statement]:
    """Every statement one application of ``rule`` derives from ``premises``.

    ``sep_oracle(x, y, z)`` answers independence antecedents on index sets.
    Single-premise rules are tried on each premise in both orientations;
    weak transitivity is tried on every ordered pair of premises.
    """
    rule = Rule(rule)
    premises = list(premises)
    for p in premises:
        if not isinstance(p, Statement) or not p.is_dependence:
            raise ValueError("premises must be dependence statements")
    if rule is Rule.BASE:
        raise ValueError("base statements are not derived by a rule")
    uni = _mask(universe)

    def sep(x, y, z):
        if not x or not y:
            return True
        return bool(sep_oracle(_unmask(x), _unmask(y), _unmask(z)))

    out = set()
    if rule in UNARY_RULES:
        for p in premises:
            x, y, z = _mask(p.x), _mask(p.y), _mask(p.z)
            for a, b in ((x, y), (y, x)):
                for nx_, ny, nz in _unary(rule, a, b, z, sep, uni):
                    out.add(Statement.dependence(_unmask(nx_), _unmask(ny), _unmask(nz)))
        return out
    for p in premises:
        for q in premises:
            if p.z != q.z:
                continue
            z = _mask(p.z)
            for a, v in ((p.x, p.y), (p.y, p.x)):
                if len(v) != 1:
                    continue
                for b, v2 in ((q.x, q.y), (q.y, q.x)):
                    if v2 != v:
                        continue
                    for nx_, ny, nz in _transitive(rule, _mask(a), _mask(v), _mask(b), z, sep):
                        out.add(Statement.dependence(_unmask(nx_), _unmask(ny), _unmask(nz)))
    return out


def cwt_closure(pt: Polytree, base: Iterable[Statement] | None = None) -> frozenset[Statement]:
    """Least set containing ``base`` and closed under all rules (independences via sep)."""
    if pt.n > CLOSURE_MAX_NODES:
        raise UniverseTooLargeError(pt.n, CLOSURE_MAX_NODES)
    if base is None:
        base = dependence_base(pt)
    sep = mask_sep_oracle(pt)
    universe = (1 << pt.n) - 1

    seen: set[tuple[int, int, int]] = set()
    queue: deque[tuple[int, int, int]] = deque()

    def push(x, y, z):
        t = _canon(x, y, z)
        if t not in seen:
            seen.add(t)
            queue.append(t)

    for s in sorted(base):
        push(_mask(s.x), _mask(s.y), _mask(s.z))

    # (z, v) -> other sides of processed statements having {v} as one side
    partners: dict[tuple[int, int], list[int]] = defaultdict(list)
    while queue:
        x, y, z = queue.popleft()
        for a, b in ((x, y), (y, x)):
            for rule in UNARY_RULES[1:]:
                for t in _unary(rule, a, b, z, sep, universe):
                    push(*t)
        for v, other in ((x, y), (y, x)):
            if not _is_single(v):
                continue
            for prev in partners[(z, v)]:
                for rule in BINARY_RULES:
                    for t in _transitive(rule, other, v, prev, z, sep):
                        push(*t)
            partners[(z, v)].append(other)

    return frozenset(Statement.dependence(_unmask(x), _unmask(y), _unmask(z)) for x, y, z in seen)


# -- instance checking ---------------------------------------------------------

def _sides(s: Statement):
    return ((s.x, s.y), (s.y, s.x))


def check_instance(rule: Rule, premises, seps, conclusion: Statement) -> bool:
    """Is ``conclusion`` one application of ``rule`` to ``premises``?

    ``seps`` are the independence antecedents (index-set triples) the step
    claims; they are matched syntactically here, not evaluated.
    """
    rule = Rule(rule)
    premises = list(premises)
    claimed = {(frozenset((frozenset(a), frozenset(b))), frozenset(c)) for a, b, c in seps}

    def has_sep(a, b, c):
        if not a or not b:
            return True
        return (frozenset((a, b)), c) in claimed

    if not conclusion.is_dependence or any(not p.is_dependence for p in premises):
        return False
    if rule is Rule.BASE:
        return False
    if rule in BINARY_RULES:
        if len(premises) != 2:
            return False
        p, q = premises
        if p.z != q.z:
            return False
        z = p.z
        for x, v in _sides(p):
            for v2, y in _sides(q):
                if len(v) != 1 or v != v2 or x & y:
                    continue
                if rule is Rule.WEAK_TRANSITIVITY1:
                    want, ok = Statement.dependence(x, y, z | v), has_sep(x, y, z)
                else:
                    want, ok = Statement.dependence(x, y, z), has_sep(x, y, z | v)
                if ok and want == conclusion:
                    return True
        return False
    if len(premises) != 1:
        return False
    (p,) = premises
    if rule is Rule.SYMMETRY:
        return p == conclusion
    for x, y in _sides(p):
        z = p.z
        for cx, cy in _sides(conclusion):
            cz = conclusion.z
            if cx != x:
                continue
            if rule is Rule.DECOMPOSITION:
                if cz == z and cy > y:
                    return True
            elif rule is Rule.WEAK_UNION:
                w = cy - y
                if cy > y and w <= z and cz == z - w:
                    return True
            elif rule is Rule.CONTRACTION1:
                yy = y - cy
                if cy < y and cz == z and has_sep(x, yy, z | cy):
                    return True
            elif rule is Rule.CONTRACTION2:
                w = y - cy
                if cy < y and cz == z | w and has_sep(x, w, z):
                    return True
            elif rule is Rule.INTERSECTION:
                yy = y - cy
                if cy < y and cz == z | yy and has_sep(x, yy, z | cy):
                    return True
            elif rule is Rule.COMPOSITION:
                w = y - cy
                if cy < y and cz == z and has_sep(x, w, z):
                    return True
    return False
