"""Finite Coxeter groups in the geometric (root-coordinate) representation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .poly import Polynomial, act, demazure
from .scalar import QQ, Field, InvalidFieldError, Scalar, field_for_order, four_cos_sq, two_cos

DEFAULT_CAP = 14400


class CoxeterError(ValueError):
    pass


class InvalidCartanError(CoxeterError):
    pass


class UnsupportedOrderError(CoxeterError):
    pass


class NotFiniteError(CoxeterError):
    pass


class IdentityViolationError(AssertionError):
    """An identity that is a theorem failed to hold; indicates a bug."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _matmul(a, b):
    n = len(a)
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            s = a[r][0] * b[0][c]
            for k in range(1, n):
                s = s + a[r][k] * b[k][c]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def _identity(n, field):
    return tuple(tuple(field.one if r == c else field.zero for c in range(n)) for r in range(n))


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A group element: its matrix on root coordinates and canonical reduced word."""

    index: int
    matrix: tuple
    word: tuple

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return "e" if not self.word else "s" + "s".join(str(i + 1) for i in self.word)


@dataclass(frozen=True)
class RootData:
    """Rank-two data for a pair (k, l): alternating root sequences and their product."""

    pair: tuple
    m: int
    sequence_k: tuple
    sequence_l: tuple
    delta: Polynomial


class CoxeterGroup:
    """A finite Coxeter group with Cartan data over an exact field.

    ``cartan[i][j]`` is the pairing of the i-th coroot with the j-th root, so
    ``s_i(a_j) = a_j - cartan[i][j] * a_i``.
    """

    def __init__(self, coxeter_matrix, cartan=None, field: Field | None = None,
                 name: str | None = None, cap: int = DEFAULT_CAP):
        m = [list(map(int, row)) for row in coxeter_matrix]
        n = len(m)
        if n == 0 or any(len(row) != n for row in m):
            raise CoxeterError("Coxeter matrix must be square and nonempty")
        for i in range(n):
            if m[i][i] != 1:
                raise CoxeterError("Coxeter matrix needs 1 on the diagonal")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise CoxeterError("Coxeter matrix must be symmetric")
                if i != j and m[i][j] < 2:
                    raise CoxeterError(f"m[{i}][{j}] = {m[i][j]} must be >= 2 (finite)")
        self.rank = n
        self.coxeter_matrix = tuple(tuple(row) for row in m)
        self.name = name
        self.cap = cap
        orders = {m[i][j] for i in range(n) for j in range(n) if i != j}

        if field is None:
            if cartan is None:
                field = self._default_field(orders)
            else:
                field = QQ
        self.field = field

        if cartan is None:
            self.cartan_is_default = True
            try:
                a = [[field(2) if i == j else -two_cos(m[i][j], field) for j in range(n)]
                     for i in range(n)]
            except InvalidFieldError as exc:
                raise UnsupportedOrderError(str(exc)) from exc
        else:
            self.cartan_is_default = False
            if len(cartan) != n or any(len(row) != n for row in cartan):
                raise InvalidCartanError("Cartan matrix shape does not match Coxeter matrix")
            a = [[field(x) for x in row] for row in cartan]
        self.cartan = tuple(tuple(row) for row in a)
        self._validate_cartan()

        self.simple = []  # filled with GroupElements once enumerated
        self._simple_matrices = [self._reflection_matrix(i) for i in range(n)]
        self._check_relations()
        self.simple = [self.element_from_word((i,)) for i in range(n)]
        self._act_cache: dict = {}
        self._demazure_cache: dict = {}
        self._delta_cache: dict = {}
        self._braid_cache: dict = {}

    # construction helpers -------------------------------------------------------
    @staticmethod
    def _default_field(orders) -> Field:
        fields = set()
        for mm in orders:
            try:
                fields.add(field_for_order(mm))
            except InvalidFieldError:
                raise UnsupportedOrderError(
                    f"order {mm} has no preset field; supply a field and/or Cartan matrix"
                ) from None
        fields.discard(QQ)
        if len(fields) > 1:
            raise UnsupportedOrderError(
                f"orders {sorted(orders)} need several quadratic fields; supply a Cartan matrix"
            )
        return fields.pop() if fields else QQ

    def _validate_cartan(self):
        n, a, m = self.rank, self.cartan, self.coxeter_matrix
        for i in range(n):
            if a[i][i] != 2:
                raise InvalidCartanError(f"cartan[{i}][{i}] must be 2")
            for j in range(n):
                if i == j:
                    continue
                if (a[i][j] == 0) != (m[i][j] == 2):
                    raise InvalidCartanError(f"cartan[{i}][{j}] must vanish exactly when m = 2")
                try:
                    want = four_cos_sq(m[i][j], self.field)
                except InvalidFieldError as exc:
                    raise UnsupportedOrderError(str(exc)) from exc
                if a[i][j] * a[j][i] != want:
                    raise InvalidCartanError(
                        f"cartan[{i}][{j}]*cartan[{j}][{i}] = {a[i][j] * a[j][i]},"
                        f" expected 4cos^2(pi/{m[i][j]}) = {want}"
                    )

    def _reflection_matrix(self, i):
        n, f = self.rank, self.field
        rows = [[f.one if r == c else f.zero for c in range(n)] for r in range(n)]
        for j in range(n):
            rows[i][j] = rows[i][j] - self.cartan[i][j]
        return tuple(tuple(r) for r in rows)

    def _check_relations(self):
        ident = _identity(self.rank, self.field)
        for i, s in enumerate(self._simple_matrices):
            if _matmul(s, s) != ident:
                raise IdentityViolationError(f"s_{i + 1}^2 != 1")
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                mm = self.coxeter_matrix[i][j]
                p = _matmul(self._simple_matrices[i], self._simple_matrices[j])
                acc = ident
                for step in range(1, mm + 1):
                    acc = _matmul(acc, p)
                    if step < mm and acc == ident:
                        raise InvalidCartanError(f"(s_{i + 1} s_{j + 1}) has order {step} < {mm}")
                if acc != ident:
                    raise InvalidCartanError(f"(s_{i + 1} s_{j + 1})^{mm} != 1")

    # enumeration ----------------------------------------------------------------
    def enumerate(self, cap: int | None = None) -> list[GroupElement]:
        """Breadth-first closure under right multiplication by generators.

        Elements come out sorted by (length, canonical word); the canonical
        word is the lexicographically least reduced word.
        """
        cap = self.cap if cap is None else cap
        if cap < 1:
            raise ValueError("cap must be positive")
        ident = _identity(self.rank, self.field)
        elements = [GroupElement(0, ident, ())]
        index = {ident: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for idx in frontier:
                g = elements[idx]
                for i, s in enumerate(self._simple_matrices):
                    mat = _matmul(g.matrix, s)
                    if mat in index:
                        continue
                    if len(elements) >= cap:
                        raise NotFiniteError(f"more than {cap} elements; group infinite or cap too small")
                    index[mat] = len(elements)
                    elements.append(GroupElement(len(elements), mat, g.word + (i,)))
                    nxt.append(index[mat])
            frontier = nxt
        return elements

    @cached_property
    def elements(self) -> list[GroupElement]:
        return self.enumerate()

    @cached_property
    def _index(self) -> dict:
        return {g.matrix: g.index for g in self.elements}

    @cached_property
    def _by_word(self) -> dict:
        return {g.word: g for g in self.elements}

    @cached_property
    def right_table(self) -> list[list[int]]:
        """right_table[i][w] = index of w*s_i"""
        return [[self._index[_matmul(g.matrix, s)] for g in self.elements]
                for s in self._simple_matrices]

    @cached_property
    def left_table(self) -> list[list[int]]:
        """left_table[i][w] = index of s_i*w"""
        return [[self._index[_matmul(s, g.matrix)] for g in self.elements]
                for s in self._simple_matrices]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> GroupElement:
        return self.elements[0]

    def element(self, key) -> GroupElement:
        if isinstance(key, GroupElement):
            return key
        if isinstance(key, int):
            return self.elements[key]
        return self.element_from_word(tuple(key))

    def element_from_word(self, word) -> GroupElement:
        word = tuple(word)
        if self.simple and word in self._by_word:
            return self._by_word[word]
        mat = _identity(self.rank, self.field)
        for i in word:
            if not 0 <= i < self.rank:
                raise CoxeterError(f"generator index {i} out of range")
            mat = _matmul(mat, self._simple_matrices[i])
        return self.elements[self._index[mat]]

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.elements[self._index[_matmul(g.matrix, h.matrix)]]

    def inverse(self, g: GroupElement) -> GroupElement:
        return self.element_from_word(tuple(reversed(g.word)))

    @cached_property
    def longest_element(self) -> GroupElement:
        return max(self.elements, key=lambda g: g.length)

    def reduced_words(self, w: GroupElement) -> list[tuple]:
        """All reduced words of ``w``, sorted lexicographically."""
        w = self.element(w)
        memo: dict = {}

        def words(idx):
            if idx in memo:
                return memo[idx]
            g = self.elements[idx]
            if g.length == 0:
                return [()]
            out = []
            for i in range(self.rank):
                prev = self.right_table[i][idx]
                if self.elements[prev].length < g.length:
                    out.extend(u + (i,) for u in words(prev))
            memo[idx] = out
            return out

        return sorted(words(w.index))

    def sign(self, w: GroupElement) -> Scalar:
        return self.field(-1) ** self.element(w).length

    def is_reduced(self, word) -> bool:
        idx = 0
        for i in word:
            nxt = self.right_table[i][idx]
            if self.elements[nxt].length < self.elements[idx].length:
                return False
            idx = nxt
        return True

    def parabolic(self, letters) -> list[GroupElement]:
        """Elements of the subgroup generated by the given simple reflections."""
        letters = sorted(set(letters))
        seen = {0}
        queue = deque([0])
        while queue:
            idx = queue.popleft()
            for i in letters:
                nxt = self.right_table[i][idx]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return [self.elements[i] for i in sorted(seen)]

    # polynomial side ----------------------------------------------------------
    def root(self, i: int) -> Polynomial:
        return Polynomial.var(self.rank, self.field, i)

    def poly(self, value) -> Polynomial:
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, str):
            from .poly import parse_polynomial

            return parse_polynomial(value, self.rank, self.field)
        return Polynomial.const(self.rank, self.field, value)

    def act(self, w, f: Polynomial) -> Polynomial:
        w = self.element(w)
        if w.index == 0:
            return f
        key = (w.index, f)
        out = self._act_cache.get(key)
        if out is None:
            out = act(w, f)
            self._act_cache[key] = out
        return out

    def reflect(self, i: int, f: Polynomial) -> Polynomial:
        return self.act(self.simple[i], f)

    def demazure(self, i: int, f: Polynomial) -> Polynomial:
        key = (i, f)
        out = self._demazure_cache.get(key)
        if out is None:
            out = demazure(self, i, f)
            self._demazure_cache[key] = out
        return out

    def demazure_word(self, word, f: Polynomial) -> Polynomial:
        """Composite D_{w1} D_{w2} ... D_{wr} applied to f (rightmost letter first)."""
        for i in reversed(tuple(word)):
            f = self.demazure(i, f)
            if not f:
                break
        return f

    def m(self, k: int, l: int) -> int:
        return self.coxeter_matrix[k][l]

    def alternating(self, start: int, other: int, length: int) -> tuple:
        return tuple(start if t % 2 == 0 else other for t in range(length))

    def rank2_root_data(self, k: int, l: int) -> RootData:
        """Alternating root sequences (a_k, s_k a_l, s_k s_l a_k, ...) and their product."""
        if k == l:
            raise CoxeterError("rank-two data needs k != l")
        mm = self.m(k, l)

        def sequence(a, b):
            out = []
            for t in range(mm):
                prefix = self.alternating(a, b, t)
                simple = a if t % 2 == 0 else b
                out.append(self.act(self.element_from_word(prefix), self.root(simple)))
            return tuple(out)

        seq_k, seq_l = sequence(k, l), sequence(l, k)
        if len(set(seq_k)) != mm or set(seq_k) != set(seq_l):
            raise IdentityViolationError(
                f"root sequences for ({k + 1},{l + 1}) are not the same set of {mm} roots",
                witness=(seq_k, seq_l),
            )
        delta_k = _product(seq_k, self)
        delta_l = _product(seq_l, self)
        if delta_k != delta_l:
            raise IdentityViolationError("root products differ", witness=(delta_k, delta_l))
        return RootData((k, l), mm, seq_k, seq_l, delta_k)

    def delta(self, k: int, l: int) -> Polynomial:
        key = (min(k, l), max(k, l))
        if key not in self._delta_cache:
            self._delta_cache[key] = self.rank2_root_data(*key).delta
        return self._delta_cache[key]

    def positivity_soft_check(self, k: int, l: int, tol: float = 1e-9) -> bool:
        """Numeric check that every root in the rank-two sequences is a nonnegative combination."""
        data = self.rank2_root_data(k, l)
        for root in data.sequence_k + data.sequence_l:
            for c in root.linear_coefficients():
                if c.to_float() < -tol:
                    return False
        return True

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.rank) for j in range(i + 1, self.rank)]

    # serialization -----------------------------------------------------------
    def to_config(self) -> dict:
        cfg = {"coxeter_matrix": [list(r) for r in self.coxeter_matrix],
               "cartan": [[str(x) for x in row] for row in self.cartan],
               "field": self.field.to_json()}
        if self.name:
            cfg["name"] = self.name
        return cfg

    @classmethod
    def from_config(cls, cfg: dict) -> "CoxeterGroup":
        field = None
        if cfg.get("field") is not None:
            field = Field.from_json(cfg["field"])
        cartan = cfg.get("cartan")
        if cartan is not None and field is None:
            field = QQ
        return cls(cfg["coxeter_matrix"], cartan=cartan, field=field, name=cfg.get("name"))

    def __repr__(self):
        label = self.name or f"rank {self.rank}"
        return f"CoxeterGroup({label}, {self.field.label})"


def _product(polys, group) -> Polynomial:
    out = group.poly(1)
    for p in polys:
        out = out * p
    return out


def group_make(coxeter_matrix, cartan=None, field=None, name=None) -> CoxeterGroup:
    return CoxeterGroup(coxeter_matrix, cartan=cartan, field=field, name=name)


def dihedral_order(group: CoxeterGroup, k: int, l: int) -> int:
    return 2 * group.m(k, l)


__all__ = [
    "CoxeterGroup", "GroupElement", "RootData", "group_make", "DEFAULT_CAP",
    "CoxeterError", "InvalidCartanError", "UnsupportedOrderError", "NotFiniteError",
    "IdentityViolationError", "dihedral_order",
]
