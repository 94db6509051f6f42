"""End-to-end runs on algebras that do not ship with the package.

Both are fed through the same entry points a user file would hit: the cyclic
group of order three through the JSON loader, and the tensor square of the
nontrivial-associator example built from structure constants (a second
genuinely quasi instance, with a 64-term associator).
"""

import json

import pytest

from quasihopf.linalg import Matrix, rat_str
from quasihopf.qha import QuasiHopfAlgebra, TensorElement, algebra_from_json
from quasihopf.repcat import (adjunction_report, end_over_regular,
                              regular_module, snake_report, unit_module)
from quasihopf.algebra_a import build_A
from quasihopf.mod_a import equivalence_report

from conftest import get_algebra


@pytest.fixture(scope="module")
def z3():
    n = 3
    mult = [rat_str(0)] * n ** 3
    for i in range(n):
        for j in range(n):
            mult[(i * n + j) * n + (i + j) % n] = "1"
    comult = [rat_str(0)] * n ** 3
    for i in range(n):
        comult[i * n * n + (i * n + i)] = "1"
    phi = [rat_str(0)] * n ** 3
    phi[0] = "1"
    antipode = [rat_str(0)] * n * n
    antipode_flat = [[0] * n for _ in range(n)]
    for i in range(n):
        antipode_flat[(-i) % n][i] = 1
    obj = {
        "dim": n,
        "basis": ["1", "g", "g2"],
        "mult": mult,
        "unit": ["1", "0", "0"],
        "comult": comult,
        "counit": ["1", "1", "1"],
        "phi": phi,
        "antipode": [rat_str(c) for row in antipode_flat for c in row],
        "alpha": ["1", "0", "0"],
        "beta": ["1", "0", "0"],
        "name": "group_z3",
    }
    return algebra_from_json(json.dumps(obj))


def test_z3_axioms_and_derived(z3):
    assert z3.verify_axioms().ok
    from quasihopf.qha import verify_derived_identities
    assert verify_derived_identities(z3).ok


def test_z3_category_basics(z3):
    c = regular_module(z3)
    assert c.validate().ok
    assert snake_report(c).ok
    assert adjunction_report(c, c).ok
    comp = end_over_regular(z3, unit_module(z3), unit_module(z3))
    assert comp.report.ok and len(comp.kernel_basis) == 3


def test_z3_equivalence(z3):
    a = build_A(z3)
    assert a.report.ok
    c = regular_module(z3)
    rep = equivalence_report(z3, [unit_module(z3), c])
    assert rep.ok, rep.render_text()


@pytest.fixture(scope="module")
def dr2():
    """The tensor square of the associator example: componentwise structure."""
    d = get_algebra("drinfeld_h2")
    n = d.dim * d.dim

    def pidx(i, j):
        return i * d.dim + j

    mult = [[dict() for _ in range(n)] for _ in range(n)]
    for i1 in range(d.dim):
        for i2 in range(d.dim):
            for j1 in range(d.dim):
                for j2 in range(d.dim):
                    out = {}
                    for k1, c1 in d.mult[i1][j1].items():
                        for k2, c2 in d.mult[i2][j2].items():
                            out[pidx(k1, k2)] = c1 * c2
                    mult[pidx(i1, i2)][pidx(j1, j2)] = out
    unit = {}
    for i, c in d.unit.items():
        for j, c2 in d.unit.items():
            unit[pidx(i, j)] = c * c2
    comult = [dict() for _ in range(n)]
    for i1 in range(d.dim):
        for i2 in range(d.dim):
            out = {}
            for (a1, b1), c1 in d.comult[i1].items():
                for (a2, b2), c2 in d.comult[i2].items():
                    out[(pidx(a1, a2), pidx(b1, b2))] = c1 * c2
            comult[pidx(i1, i2)] = out
    counit = [d.counit[i] * d.counit[j] for i in range(d.dim) for j in range(d.dim)]
    phi = {}
    for (x1, y1, z1), c1 in d.phi.coeffs.items():
        for (x2, y2, z2), c2 in d.phi.coeffs.items():
            phi[(pidx(x1, x2), pidx(y1, y2), pidx(z1, z2))] = c1 * c2
    antipode = d.antipode.kron(d.antipode)
    alpha = {}
    for (i,), c in d.alpha.coeffs.items():
        for (j,), c2 in d.alpha.coeffs.items():
            alpha[pidx(i, j)] = c * c2
    beta = {}
    for (i,), c in d.beta.coeffs.items():
        for (j,), c2 in d.beta.coeffs.items():
            beta[pidx(i, j)] = c * c2
    return QuasiHopfAlgebra(
        dim=n, basis=None, mult=mult, unit=unit, comult=comult, counit=counit,
        phi=TensorElement(n, 3, phi), antipode=antipode, alpha=alpha, beta=beta,
        name="drinfeld_square")


def test_square_is_quasi_hopf(dr2):
    assert dr2.verify_axioms().ok
    assert dr2.phi != dr2.unit_elem(3)
    from quasihopf.qha import verify_derived_identities
    assert verify_derived_identities(dr2).ok


def test_square_algebra_A(dr2):
    a = build_A(dr2)
    assert a.report.ok, a.report.render_text()


def test_square_adjunction_and_duals(dr2):
    c = regular_module(dr2)
    assert snake_report(c).ok
    assert adjunction_report(c, c).ok


def test_square_free_module_comparison(dr2):
    # the deepest associator-dependent content at this dimension: the
    # comparison isomorphisms and the counit windows with the five-leg maps
    from quasihopf.algebra_a import s_t_isos
    from quasihopf.mod_a import counit_iso
    a = build_A(dr2)
    s_map, t_map, rep = s_t_isos(a.center, a)
    assert rep.ok, rep.render_text()
    _, crep = counit_iso(regular_module(dr2), a)
    assert crep.ok, crep.render_text()
