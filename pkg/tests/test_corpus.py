from __future__ import annotations

import math

import numpy as np
import pytest

from reinhardt.corpus import DOMAIN_CATALOG, builtin_domain, builtin_function
from reinhardt.domain import is_log_convex, origin_on_boundary
from reinhardt.errors import InvalidParameter, UnknownName
from reinhardt.laurent import auto_tori, negative_part_report, window_for, windows_for

FUNCTIONS = [
    "monomial(2,-1)",
    "monomial(0,3)",
    "exp_linear(1,2)",
    "exp_linear(0.5,-1)",
    "ratio",
    "geom",
    "poly_random(0)",
    "poly_random(5)",
    "poly_random(2,3)",
]
DOMAINS = ["hartogs", "polydisc", "polydisc(3)", "H(2,-1)", "H(1,-2)", "H(3,-2)", "nonconvex_union"]


def test_domain_examples():
    h = builtin_domain("hartogs").domain
    assert len(h.pieces) == 1 and h.pieces[0][0].num_exponent == (1, 0) and h.pieces[0][0].den_exponent == (0, 1)
    assert h.box_log_radius == 0
    g = builtin_domain("H(2,-1)").domain
    assert g.pieces[0][0].num_exponent == (2, 0) and g.pieces[0][0].den_exponent == (0, 1)
    assert builtin_domain("polydisc").domain.pieces == ((),)


def test_function_examples():
    z = np.array([0.3, 0.6])
    assert builtin_function("monomial(2,-1)").function(z) == pytest.approx(0.15)
    assert builtin_function("geom").function(np.array([0.25, 0.5])) == pytest.approx(4.0)
    assert builtin_function("exp_linear(1,2)").function.coefficient((2, 1)) == pytest.approx(1.0)
    assert builtin_function("geom").function.coefficient((3, -4)) == 1
    assert builtin_function("geom").function.coefficient((3, -3)) == 0


def test_unknown_names():
    with pytest.raises(UnknownName):
        builtin_domain("annulus")
    with pytest.raises(UnknownName):
        builtin_function("sinh")


def test_invalid_parameters():
    with pytest.raises(InvalidParameter):
        builtin_domain("H(0,0)")
    with pytest.raises(InvalidParameter):
        builtin_function("exp_linear(1,nan)")
    polydisc = builtin_domain("polydisc").domain
    with pytest.raises(InvalidParameter):
        builtin_function("geom").check_domain(polydisc)
    with pytest.raises(InvalidParameter):
        builtin_function("ratio").check_domain(polydisc)
    builtin_function("geom").check_domain(builtin_domain("hartogs").domain)
    builtin_function("ratio").check_domain(builtin_domain("H(2,-1)").domain)


def test_poly_random_is_reproducible():
    a = builtin_function("poly_random(11)").function
    b = builtin_function("poly_random(11)").function
    z = np.array([0.2 + 0.1j, -0.3j])
    assert a(z) == b(z)
    coeffs = [a.coefficient(al) for al in np.ndindex(7, 7)]
    assert all(c.imag == 0 and c.real.is_integer() and -5 <= c.real <= 5 for c in coeffs)
    assert all(a.coefficient(al) == 0 for al in np.ndindex(7, 7) if sum(al) > 6)


@pytest.mark.parametrize("name", FUNCTIONS)
def test_known_coefficients_match_the_window(name):
    nf = builtin_function(name)
    win = window_for(nf.function, nf.reference_torus)
    w = np.array(nf.reference_torus.w)
    worst = 0.0
    for idx in np.ndindex(*win.scaled.shape):
        alpha = tuple(int(i) - win.offset for i in idx)
        expected = nf.function.coefficient(alpha) * math.prod(wj**a for wj, a in zip(w, alpha))
        worst = max(worst, abs(win.scaled[idx] - expected))
    assert worst < 1e-10


@pytest.mark.parametrize("name", DOMAINS)
def test_domain_notes_match_computed_predicates(name):
    nd = builtin_domain(name)
    assert origin_on_boundary(nd.domain) == nd.notes["origin_on_boundary"]
    convex = is_log_convex(nd.domain, samples=200, seed=0).status != "NotConvex"
    assert convex == nd.notes["log_convex"]


@pytest.mark.parametrize("name", ["hartogs", "H(2,-1)", "H(3,-2)"])
@pytest.mark.parametrize("fname", FUNCTIONS)
def test_smoothness_flags_match_verdicts(name, fname):
    d = builtin_domain(name).domain
    nf = builtin_function(fname)
    if nf.function.dimension != d.dimension:
        return
    try:
        nf.check_domain(d)
    except InvalidParameter:
        return
    report = negative_part_report(windows_for(nf.function, auto_tori(d, 64)), 1e-8)
    assert report.clean == bool(nf.function.smooth_up_to_boundary)


def test_catalogs_are_listable():
    assert "hartogs" in DOMAIN_CATALOG
    payload = builtin_function("geom").to_dict()
    assert payload["smooth_up_to_boundary"] is False and payload["known_coefficients"]
