"""Descent for free graded equivariant modules over the polynomial ring.

A module is free on generators ``e_1..e_r`` and each simple reflection acts
semilinearly: ``s_i(f e_a) = s_i(f) * sum_b S_i[b][a] e_b``.  Descent along
``<s_i>`` means every ``(1 - s_i) m`` is divisible by ``a_i``.  Because

    (1 - s_i)(f e) = (f - s_i f) e + s_i(f) (1 - s_i)(e),

it is enough to test the generators, and then ``G_i(m) = (1 - s_i)(m) / a_i``
is given on ``f e_a`` by ``D_i(f) e_a + s_i(f) G_i(e_a)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .coxeter import CoxeterGroup
from .poly import NotDivisibleError, Polynomial, divide_exact


class ModuleError(ValueError):
    pass


class NotAnActionError(ModuleError):
    """The reflection matrices do not satisfy a Coxeter relation."""


Vector = tuple  # of Polynomials, one per generator


def _matmul(a, b, group):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for r in range(n):
        row = []
        for c in range(m):
            s = group.poly(0)
            for t in range(k):
                if a[r][t] and b[t][c]:
                    s = s + a[r][t] * b[t][c]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def _act_matrix(group, g, mat):
    return tuple(tuple(group.act(g, x) for x in row) for row in mat)


def _identity(group, r):
    return tuple(tuple(group.poly(1 if i == j else 0) for j in range(r)) for i in range(r))


class EquivariantModule:
    def __init__(self, group: CoxeterGroup, degrees, actions, names=None):
        self.group = group
        self.degrees = tuple(int(d) for d in degrees)
        r = len(self.degrees)
        self.names = tuple(names) if names else tuple(f"e{a + 1}" for a in range(r))
        if len(actions) != group.rank:
            raise ModuleError(f"need {group.rank} reflection matrices, got {len(actions)}")
        mats = []
        for i, mat in enumerate(actions):
            if len(mat) != r or any(len(row) != r for row in mat):
                raise ModuleError(f"matrix for s_{i + 1} must be {r}x{r}")
            mats.append(tuple(tuple(group.poly(x) for x in row) for row in mat))
        self.actions = tuple(mats)
        self._check_grading()
        self._check_action()

    @property
    def size(self) -> int:
        return len(self.degrees)

    def _check_grading(self):
        for i, mat in enumerate(self.actions):
            for b, row in enumerate(mat):
                for a, entry in enumerate(row):
                    if entry and entry.homogeneous_degree() != self.degrees[a] - self.degrees[b]:
                        raise ModuleError(
                            f"S_{i + 1}[{b + 1}][{a + 1}] = {entry} breaks the grading"
                        )

    def _semilinear_power(self, word):
        """Matrix M with (s_w1 o s_w2 o ...)(f) = M * w(f)."""
        g = self.group
        mat = _identity(g, self.size)
        elem = g.identity
        for i in word:
            mat = _matmul(mat, _act_matrix(g, elem, self.actions[i]), g)
            elem = g.multiply(elem, g.simple[i])
        return mat

    def _check_action(self):
        ident = _identity(self.group, self.size)
        for i in range(self.group.rank):
            if self._semilinear_power((i, i)) != ident:
                raise NotAnActionError(f"s_{i + 1} does not act as an involution")
        for k, l in self.group.pairs():
            m = self.group.m(k, l)
            if self._semilinear_power(self.group.alternating(k, l, 2 * m)) != ident:
                raise NotAnActionError(f"(s_{k + 1} s_{l + 1})^{m} does not act as the identity")

    # elements -----------------------------------------------------------------
    def basis_vector(self, a: int) -> Vector:
        return tuple(self.group.poly(1 if b == a else 0) for b in range(self.size))

    def reflect(self, i: int, vec: Vector) -> Vector:
        g = self.group
        twisted = [g.reflect(i, f) for f in vec]
        mat = self.actions[i]
        out = []
        for b in range(self.size):
            s = g.poly(0)
            for a in range(self.size):
                if mat[b][a] and twisted[a]:
                    s = s + mat[b][a] * twisted[a]
            out.append(s)
        return tuple(out)

    # serialization --------------------------------------------------------------
    @classmethod
    def from_config(cls, cfg: dict, group: CoxeterGroup | None = None) -> "EquivariantModule":
        if group is None:
            group = _group_from(cfg["group"])
        gens = cfg["generators"]
        degrees = [g.get("degree", 0) for g in gens]
        names = [g.get("name", f"e{a + 1}") for a, g in enumerate(gens)]
        actions = []
        for i in range(group.rank):
            rows = cfg["action"][str(i + 1)]
            actions.append([[group.poly(str(x)) for x in row] for row in rows])
        return cls(group, degrees, actions, names)

    def to_config(self) -> dict:
        return {
            "group": self.group.name or self.group.to_config(),
            "generators": [{"name": n, "degree": d} for n, d in zip(self.names, self.degrees)],
            "action": {str(i + 1): [[x.to_text() for x in row] for row in mat]
                       for i, mat in enumerate(self.actions)},
        }


def _group_from(source) -> CoxeterGroup:
    from .presets import preset

    if isinstance(source, str):
        return preset(source)
    return CoxeterGroup.from_config(source)


def module_make(config: dict, group: CoxeterGroup | None = None) -> EquivariantModule:
    return EquivariantModule.from_config(config, group)


@dataclass
class GOperator:
    """``G_i`` on generators: column ``a`` holds the coordinates of ``G_i(e_a)``."""

    module: EquivariantModule
    index: int
    matrix: tuple

    def apply(self, vec: Vector) -> Vector:
        """Twisted Leibniz: G_i(sum f_a e_a) = sum D_i(f_a) e_a + s_i(f_a) G_i(e_a)."""
        g, i, r = self.module.group, self.index, self.module.size
        out = [g.demazure(i, f) for f in vec]
        twisted = [g.reflect(i, f) for f in vec]
        for b in range(r):
            for a in range(r):
                if self.matrix[b][a] and twisted[a]:
                    out[b] = out[b] + self.matrix[b][a] * twisted[a]
        return tuple(out)

    def column(self, a: int) -> Vector:
        return tuple(self.matrix[b][a] for b in range(self.module.size))


@dataclass
class DescentFailure:
    index: int
    generator: int
    component: int
    remainder: Polynomial

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"reflection": self.index + 1, "generator": self.generator + 1,
                "component": self.component + 1, "remainder": self.remainder.to_text()}


def descent_check(module: EquivariantModule, i: int):
    """Return the :class:`GOperator` for ``s_i`` or a :class:`DescentFailure` witness."""
    g = module.group
    root = g.root(i)
    columns = []
    for a in range(module.size):
        e = module.basis_vector(a)
        diff = [x - y for x, y in zip(e, module.reflect(i, e))]
        col = []
        for b, entry in enumerate(diff):
            try:
                col.append(divide_exact(entry, root))
            except NotDivisibleError as exc:
                return DescentFailure(i, a, b, exc.remainder)
        columns.append(col)
    matrix = tuple(tuple(columns[a][b] for a in range(module.size)) for b in range(module.size))
    return GOperator(module, i, matrix)


def universal_descent(module: EquivariantModule, i: int, vec: Vector) -> Vector:
    """``(1 - s_i)(vec) / a_i`` computed directly; raises NotDivisibleError."""
    root = module.group.root(i)
    diff = [x - y for x, y in zip(vec, module.reflect(i, vec))]
    return tuple(divide_exact(d, root) for d in diff)


@dataclass
class BraidReport:
    pair: tuple
    m: int
    differences: list  # per generator: vector of polynomials

    @property
    def ok(self) -> bool:
        return all(not f for vec in self.differences for f in vec)

    def to_json(self) -> dict:
        return {"pair": [self.pair[0] + 1, self.pair[1] + 1], "m": self.m, "ok": self.ok,
                "differences": [[f.to_text() for f in vec] for vec in self.differences]}


def _compose(ops, word, vec):
    for i in reversed(word):
        vec = ops[i].apply(vec)
    return vec


def braid_check(module: EquivariantModule, k: int, l: int, ops=None) -> BraidReport:
    """Evaluate G_k G_l G_k ... - G_l G_k G_l ... (m letters) on every generator."""
    g = module.group
    if ops is None:
        ops = {}
        for i in (k, l):
            op = descent_check(module, i)
            if not op:
                raise ModuleError(f"module does not descend along s_{i + 1}")
            ops[i] = op
    m = g.m(k, l)
    diffs = []
    for a in range(module.size):
        e = module.basis_vector(a)
        left = _compose(ops, g.alternating(k, l, m), e)
        right = _compose(ops, g.alternating(l, k, m), e)
        diffs.append(tuple(x - y for x, y in zip(left, right)))
    return BraidReport((k, l), m, diffs)


@dataclass
class ModuleReport:
    name: str
    descends: dict  # reflection index -> GOperator | DescentFailure
    braids: list

    @property
    def descends_everywhere(self) -> bool:
        return all(bool(v) for v in self.descends.values())

    @property
    def ok(self) -> bool:
        """Full descent must force every braid difference to vanish."""
        return not self.descends_everywhere or all(b.ok for b in self.braids)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "descent": {str(i + 1): (True if v else v.to_json()) for i, v in self.descends.items()},
            "descends_everywhere": self.descends_everywhere,
            "braids": [b.to_json() for b in self.braids],
            "ok": self.ok,
        }


def analyze(module: EquivariantModule, name: str = "") -> ModuleReport:
    g = module.group
    ops = {i: descent_check(module, i) for i in range(g.rank)}
    braids = []
    if all(bool(op) for op in ops.values()):
        braids = [braid_check(module, k, l, ops) for k, l in g.pairs()]
    return ModuleReport(name, ops, braids)


# -- fixture helpers -------------------------------------------------------------

def _unipotent_inverse(p, group):
    """Inverse of an upper unitriangular polynomial matrix."""
    r = len(p)
    inv = [[group.poly(1 if i == j else 0) for j in range(r)] for i in range(r)]
    for col in range(r):
        for row in range(col - 1, -1, -1):
            s = group.poly(0)
            for t in range(row + 1, col + 1):
                s = s + p[row][t] * inv[t][col]
            inv[row][col] = -s
    return inv


def twisted_trivial_module(group: CoxeterGroup, degrees, change_of_basis) -> EquivariantModule:
    """The trivially-acted free module written in the basis ``e'_a = sum_b P[b][a] e_b``.

    ``P`` must be upper unitriangular; the module then descends along every
    reflection, but its reflection matrices ``P^-1 s_i(P)`` are not constant.
    """
    p = [[group.poly(x) for x in row] for row in change_of_basis]
    r = len(p)
    for i in range(r):
        if p[i][i] != 1 or any(p[i][j] for j in range(i)):
            raise ModuleError("change of basis must be upper unitriangular")
    inv = _unipotent_inverse(p, group)
    actions = []
    for i in range(group.rank):
        sp = [[group.reflect(i, x) for x in row] for row in p]
        actions.append(_matmul(inv, sp, group))
    return EquivariantModule(group, degrees, actions)


def regular_module(group: CoxeterGroup) -> EquivariantModule:
    """Free module on the group elements with s_i(f e_g) = s_i(f) e_{s_i g}."""
    n = group.order
    actions = []
    for i in range(group.rank):
        mat = [[0] * n for _ in range(n)]
        for w in range(n):
            mat[group.left_table[i][w]][w] = 1
        actions.append(mat)
    names = [repr(g) for g in group.elements]
    return EquivariantModule(group, [0] * n, actions, names)


FIXTURE_NAMES = (
    "a1_trivial", "a1_sign", "a1_twisted", "a1xa1_mixed", "a2_trivial", "a2_sign",
    "a2_twisted", "a2_regular", "b2_twisted", "g2_twisted", "i2_5_twisted", "a3_twisted",
    "h3_trivial",
)


def load_fixture(name: str) -> EquivariantModule:
    text = resources.files("nilhecke").joinpath("fixtures", f"{name}.json").read_text()
    return module_make(json.loads(text))


def load_module_file(path) -> EquivariantModule:
    with open(path) as fh:
        return module_make(json.load(fh))
