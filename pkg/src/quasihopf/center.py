"""Objects of the centre of the module category, stored by coaction.

A centre object is a module together with a natural family of braidings
against every object.  Because the regular module generates the category,
the whole family is pinned down by its value on the regular module at the
unit, i.e. by a coaction d: M -> H (x) M; the braiding against any module is
reconstructed from d, and the centre axioms (counit normalization, <-
linearity, invertibility, hexagon, naturality) are *checked*, not assumed:
the usual quasi-Yetter-Drinfeld axiom list never appears as input.

Braiding orientation: beta_{M,X}: M (x) X -> X (x) M, the centre object
crosses over.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import LinearSystem, Matrix, ZERO, rank
from .qha import QuasiHopfAlgebra
from .report import Report, VerificationFailure
from .repcat import (HLinearMap, HModule, associator, associator_inv, hom_space,
                     identity_map, regular_module, tensor, unit_module)


@dataclass(eq=False)
class CenterObject:
    """A module plus the coaction encoding its braiding against everything."""

    base: HModule
    coaction: Matrix  # (n*d) x d, column j = image of basis vector j
    label: str = ""

    def __post_init__(self):
        n, d = self.base.h.dim, self.base.dim
        if self.coaction.rows != n * d or self.coaction.cols != d:
            raise ValueError(
                f"coaction must be {n * d}x{d}, got {self.coaction.rows}x{self.coaction.cols}")
        self._validated: Report | None = None

    @property
    def h(self) -> QuasiHopfAlgebra:
        return self.base.h

    @property
    def dim(self) -> int:
        return self.base.dim

    def require_valid(self) -> "CenterObject":
        if self._validated is None:
            self._validated = validate_center(self)
        if not self._validated.ok:
            raise VerificationFailure(
                f"centre validation failed for {self.label or 'object'}", self._validated)
        return self

    def __repr__(self):
        return f"CenterObject({self.label or self.base.label or '?'}, dim={self.dim})"


def braiding(m: CenterObject, x: HModule) -> HLinearMap:
    """beta_{m,x}: m (x) x -> x (x) m, reconstructed from the coaction.

    On a vector v with coaction sum h_i (x) v_i the braiding sends
    v (x) u to sum (h_i |> u) (x) v_i; naturality against maps out of the
    regular module forces exactly this formula.
    """
    h = m.h
    d, dx = m.dim, x.dim
    src = tensor(m.base, x)
    dst = tensor(x, m.base)
    cols = [dict() for _ in range(d * dx)]
    dcols = m.coaction.columns()
    for v in range(d):
        # group the coaction terms by H-leg
        by_leg: dict[int, list[tuple[int, Fraction]]] = {}
        for flat, c in dcols[v].items():
            i, v2 = divmod(flat, d)
            by_leg.setdefault(i, []).append((v2, c))
        for i, parts in by_leg.items():
            act_cols = x.action[i].columns()
            for u in range(dx):
                acted = act_cols[u]
                if not acted:
                    continue
                col = cols[v * dx + u]
                for v2, c in parts:
                    for xi, xv in acted.items():
                        key = xi * d + v2
                        y = col.get(key, ZERO) + c * xv
                        if y:
                            col[key] = y
                        else:
                            del col[key]
    return HLinearMap(src, dst, Matrix(d * dx, d * dx, cols))


def trivial_center(x: HModule) -> CenterObject:
    """The coaction v -> 1 (x) v (validates only when the flip is central)."""
    h = x.h
    cols = []
    for j in range(x.dim):
        col = {}
        for i, c in h.unit.items():
            col[i * x.dim + j] = c
        cols.append(col)
    return CenterObject(x, Matrix(h.dim * x.dim, x.dim, cols),
                        label=f"triv({x.label or '?'})")


def validate_center(m: CenterObject) -> Report:
    """Counit normalization, linearity, invertibility, hexagon, naturality."""
    h = m.h
    rep = Report(title=f"center[{m.label or m.base.label or '?'}]")
    rep.add("base_module", m.base.validate().ok)

    # (eps x id) . coaction = id
    d = m.dim
    eps_cols = []
    for j in range(d):
        out: dict[int, Fraction] = {}
        for flat, c in m.coaction.col(j).items():
            i, v2 = divmod(flat, d)
            e = h.counit[i]
            if e:
                y = out.get(v2, ZERO) + e * c
                if y:
                    out[v2] = y
                else:
                    del out[v2]
        eps_cols.append(out)
    rep.add("counit_normalization", Matrix(d, d, eps_cols).is_identity())

    c_mod = regular_module(h)
    b = braiding(m, c_mod)
    rep.add("braiding_h_linear", b.is_h_linear())
    rep.add("braiding_invertible", rank(b.matrix) == b.matrix.rows)

    rep.add("unit_braiding_trivial",
            braiding(m, unit_module(h)).matrix.is_identity())

    # hexagon against (C, C)
    x = y = c_mod
    composite = associator_inv(m.base, x, y) \
        .then(braiding(m, x).tensor(identity_map(y))) \
        .then(associator(x, m.base, y)) \
        .then(identity_map(x).tensor(braiding(m, y))) \
        .then(associator_inv(x, y, m.base))
    rep.add("hexagon_on_CC", composite.matrix == braiding(m, tensor(x, y)).matrix)

    ok = True
    for f in hom_space(c_mod, c_mod):
        lhs = b.then(f.tensor(identity_map(m.base)))
        rhs = identity_map(m.base).tensor(f).then(b)
        if lhs.matrix != rhs.matrix:
            ok = False
    rep.add("naturality_hom_CC", ok)

    cc = tensor(c_mod, c_mod)
    bcc = braiding(m, cc)
    ok = True
    for f in hom_space(c_mod, cc):
        lhs = b.then(f.tensor(identity_map(m.base)))
        rhs = identity_map(m.base).tensor(f).then(bcc)
        if lhs.matrix != rhs.matrix:
            ok = False
    rep.add("naturality_hom_C_CC", ok)
    return rep


def tensor_center(m: CenterObject, n: CenterObject, validate: bool = True) -> CenterObject:
    """Tensor product in the centre: braidings composed through the hexagon."""
    if m.h is not n.h:
        raise ValueError("centre objects over different algebras")
    h = m.h
    base = tensor(m.base, n.base)
    c_mod = regular_module(h)
    comp = associator(m.base, n.base, c_mod) \
        .then(identity_map(m.base).tensor(braiding(n, c_mod))) \
        .then(associator_inv(m.base, c_mod, n.base)) \
        .then(braiding(m, c_mod).tensor(identity_map(n.base))) \
        .then(associator(c_mod, m.base, n.base))
    d = base.dim
    cols = []
    for v in range(d):
        out: dict[int, Fraction] = {}
        for i, c in h.unit.items():
            for k, x in comp.matrix.col(v * h.dim + i).items():
                y = out.get(k, ZERO) + c * x
                if y:
                    out[k] = y
                else:
                    del out[k]
        cols.append(out)
    obj = CenterObject(base, Matrix(h.dim * d, d, cols),
                       label=f"({m.label or '?'})*({n.label or '?'})")
    if validate:
        rep = validate_center(obj)
        if not rep.ok:
            raise VerificationFailure(
                "tensor product of centre objects failed validation "
                "(braiding convention bug)", rep)
        obj._validated = rep
    return obj


def center_hom_space(m: CenterObject, n: CenterObject) -> list[HLinearMap]:
    """Basis of maps that are module maps and intertwine the coactions."""
    h = m.h
    dm, dn = m.dim, n.dim
    sys = LinearSystem(dn * dm)  # F[i, j] at i*dm + j
    for t in range(h.dim):
        arows = n.base.action[t].row_view()
        acols = m.base.action[t].columns()
        for i in range(dn):
            for j in range(dm):
                coeffs: dict[int, Fraction] = {}
                for k, x in acols[j].items():
                    coeffs[i * dm + k] = coeffs.get(i * dm + k, ZERO) + x
                for k, x in arows[i].items():
                    key = k * dm + j
                    y = coeffs.get(key, ZERO) - x
                    if y:
                        coeffs[key] = y
                    else:
                        coeffs.pop(key, None)
                if coeffs:
                    sys.add_equation(coeffs)
    # (id_H x F) . delta_M = delta_N . F
    dm_cols = m.coaction.columns()
    dn_rows = n.coaction.row_view()
    for hh in range(h.dim):
        for i in range(dn):
            for j in range(dm):
                coeffs = {}
                for flat, x in dm_cols[j].items():
                    i2, v2 = divmod(flat, dm)
                    if i2 == hh:
                        key = i * dm + v2
                        coeffs[key] = coeffs.get(key, ZERO) + x
                for k, x in dn_rows[hh * dn + i].items():
                    key = k * dm + j
                    y = coeffs.get(key, ZERO) - x
                    if y:
                        coeffs[key] = y
                    else:
                        coeffs.pop(key, None)
                if coeffs:
                    sys.add_equation(coeffs)
    out = []
    for vec in sys.kernel_basis():
        cols = [dict() for _ in range(dm)]
        for idx, c in vec.items():
            i, j = divmod(idx, dm)
            cols[j][i] = c
        out.append(HLinearMap(m.base, n.base, Matrix(dn, dm, cols)))
    return out
