"""The superalgebra sl(2|1): functional generators, 3-dim representations,
relation and Casimir checkers, and closed-form module basis vectors.

Generator names: even S, B, S+, S- and odd V+, V-, W+, W-.  The E-basis
dictionary and the grading (bar1 = bar3 = 0, bar2 = 1) are hard-coded once;
the relation checker derives every expected commutator from the structure
delta-formula rather than a hand-written table.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .linsolve import solve_in_span
from .opalg import (Cached, EvenDeriv, MulPoly, MulZ, OddDeriv, Operator,
                    Scalar, compose, equal_on_degree, graded_commutator,
                    op_sum, rising_factorial)
from .report import CheckReport
from .superpoly import SuperPolynomial, theta, theta_bar

Q = Fraction

GEN_NAMES = ("S", "B", "S+", "S-", "V+", "V-", "W+", "W-")

#: grading of the 3x3 index labels 1, 2, 3
LABEL_PARITY = {1: 0, 2: 1, 3: 0}


class SingularWeight(Exception):
    """Closed-form basis vectors hit a pole of the weight parameters."""


@dataclass
class Weight:
    ell: Fraction
    b: Fraction

    def __post_init__(self):
        self.ell = Q(self.ell)
        self.b = Q(self.b)


@dataclass
class SiteGenerators:
    site: int
    weight: Weight
    gens: dict[str, Operator]
    nsites: int

    def __getitem__(self, name: str) -> Operator:
        return self.gens[name]


@dataclass
class FundamentalRep:
    kind: str  # chiral | antichiral
    matrices: dict[str, tuple]
    grading: tuple = (0, 1, 0)

    def __getitem__(self, name: str):
        return self.matrices[name]


def build_generators(site: int, w: Weight, nsites: int = 2) -> SiteGenerators:
    """First-order differential operators of the lowest-weight representation.

    All nine operators act on the chosen site's variables and are the
    identity on every other site.
    """
    ell, b = Q(w.ell), Q(w.b)
    z = MulZ(site)
    dz = EvenDeriv(site)
    th, thb = theta(site), theta_bar(site)
    mth, mthb = MulPoly(SuperPolynomial.odd_var(th, nsites)), \
        MulPoly(SuperPolynomial.odd_var(thb, nsites))
    dth, dthb = OddDeriv(th), OddDeriv(thb)
    th_poly = SuperPolynomial.odd_var(th, nsites)
    thb_poly = SuperPolynomial.odd_var(thb, nsites)
    th_thb = MulPoly(th_poly * thb_poly)       # theta thetabar
    thb_th = MulPoly(thb_poly * th_poly)       # thetabar theta = -theta thetabar

    s_minus = -1 * dz
    v_minus = dth + Q(1, 2) * (mthb @ dz)
    w_minus = dthb + Q(1, 2) * (mth @ dz)
    v_plus = op_sum(
        -1 * (z @ dth),
        Q(-1, 2) * (mthb @ z @ dz),
        Q(-1, 2) * (thb_th @ dth),
        Scalar(-(ell - b)) @ mthb,
    )
    w_plus = op_sum(
        -1 * (z @ dthb),
        Q(-1, 2) * (mth @ z @ dz),
        Q(-1, 2) * (th_thb @ dthb),
        Scalar(-(ell + b)) @ mth,
    )
    s_plus = op_sum(
        z @ z @ dz,
        z @ mth @ dth,
        z @ mthb @ dthb,
        Scalar(2 * ell) @ z,
        Scalar(-b) @ th_thb,
    )
    s_op = op_sum(z @ dz, Q(1, 2) * (mth @ dth), Q(1, 2) * (mthb @ dthb),
                  Scalar(ell))
    b_op = op_sum(Q(1, 2) * (mthb @ dthb), Q(-1, 2) * (mth @ dth), Scalar(b))
    gens = {"S": s_op, "B": b_op, "S+": s_plus, "S-": s_minus,
            "V+": v_plus, "V-": v_minus, "W+": w_plus, "W-": w_minus}
    return SiteGenerators(site=site, weight=w, gens=gens, nsites=nsites)


def e_basis_ops(g: SiteGenerators) -> dict[tuple[int, int], Operator]:
    """The nine E_AB combinations generating the algebra.

    The Cartan identifications E11 = S+B, E33 = B-S are forced by the
    delta-formula together with the off-diagonal dictionary (e.g.
    [E11, E13] = E13 needs [E11, S+] = S+), and agree with the diagonal
    of the Lax matrix.
    """
    return {
        (3, 1): g["S-"], (2, 1): -1 * g["W-"], (3, 2): g["V-"],
        (1, 3): g["S+"], (2, 3): g["W+"], (1, 2): g["V+"],
        (1, 1): g["S"] + g["B"], (2, 2): Q(-2) * g["B"],
        (3, 3): g["B"] - g["S"],
    }


def _label_sign(ab, cd) -> int:
    p1 = (LABEL_PARITY[ab[0]] + LABEL_PARITY[ab[1]]) & 1
    p2 = (LABEL_PARITY[cd[0]] + LABEL_PARITY[cd[1]]) & 1
    return -1 if p1 * p2 else 1


def check_relations(g, max_degree: int = 3) -> CheckReport:
    """Verify all 81 graded commutators against the structure constants."""
    t0 = time.perf_counter()
    if isinstance(g, FundamentalRep):
        report = _check_relations_matrix(g)
    else:
        report = _check_relations_ops(g, max_degree)
    report.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return report


def _check_relations_ops(g: SiteGenerators, max_degree: int) -> CheckReport:
    e = e_basis_ops(g)
    report = CheckReport(
        check_name="sl21-relations",
        params={"ell": str(g.weight.ell), "b": str(g.weight.b)},
        max_degree=max_degree)
    labels = [(a, bb) for a in (1, 2, 3) for bb in (1, 2, 3)]
    for ab in labels:
        for cd in labels:
            sign = _label_sign(ab, cd)
            lhs = compose(e[ab], e[cd]) - Q(sign) * compose(e[cd], e[ab])
            rhs_terms = []
            if ab[1] == cd[0]:
                rhs_terms.append(e[(ab[0], cd[1])])
            if cd[1] == ab[0]:
                rhs_terms.append(Q(-sign) * e[(cd[0], ab[1])])
            rhs = op_sum(*rhs_terms) if rhs_terms else Scalar(0)
            sub = equal_on_degree(lhs, rhs, max_degree, nsites=g.nsites,
                                  name=f"[E{ab},E{cd}]")
            report.merge(sub, prefix=f"[E{ab},E{cd}] on ")
    return report


# -- exact 3x3 matrix helpers ------------------------------------------------

def mat_zero():
    return ((Q(0),) * 3,) * 3


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a):
    c = Q(c)
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
                 for i in range(3))


def e_basis_matrices(rep: FundamentalRep) -> dict[tuple[int, int], tuple]:
    m = rep.matrices
    return {
        (3, 1): m["S-"], (2, 1): mat_scale(-1, m["W-"]), (3, 2): m["V-"],
        (1, 3): m["S+"], (2, 3): m["W+"], (1, 2): m["V+"],
        (1, 1): mat_add(m["S"], m["B"]),
        (2, 2): mat_scale(-2, m["B"]),
        (3, 3): mat_add(m["B"], mat_scale(-1, m["S"])),
    }


def _check_relations_matrix(rep: FundamentalRep) -> CheckReport:
    e = e_basis_matrices(rep)
    report = CheckReport(check_name=f"sl21-relations-{rep.kind}",
                         params={"rep": rep.kind}, max_degree=None)
    labels = [(a, b) for a in (1, 2, 3) for b in (1, 2, 3)]
    for ab in labels:
        for cd in labels:
            sign = _label_sign(ab, cd)
            lhs = mat_add(mat_mul(e[ab], e[cd]),
                          mat_scale(-sign, mat_mul(e[cd], e[ab])))
            rhs = mat_zero()
            if ab[1] == cd[0]:
                rhs = mat_add(rhs, e[(ab[0], cd[1])])
            if cd[1] == ab[0]:
                rhs = mat_add(rhs, mat_scale(-sign, e[(cd[0], ab[1])]))
            if lhs != rhs:
                report.add_failure(f"[E{ab},E{cd}]", str(lhs), str(rhs), "-")
    return report


def casimir(g: SiteGenerators, order: int) -> Operator:
    """The central element of the requested order as an operator."""
    if order == 2:
        return op_sum(
            compose(g["S"], g["S"]),
            Q(-1) * compose(g["B"], g["B"]),
            compose(g["S+"], g["S-"]),
            compose(g["V+"], g["W-"]),
            compose(g["W+"], g["V-"]),
        )
    if order == 3:
        e = e_basis_ops(g)
        terms = []
        for a in (1, 2, 3):
            for b in (1, 2, 3):
                for c in (1, 2, 3):
                    sign = -1 if (LABEL_PARITY[b] + LABEL_PARITY[c]) & 1 else 1
                    terms.append(Q(sign, 6) * compose(e[(a, b)], e[(b, c)], e[(c, a)]))
        return Cached(op_sum(*terms))
    raise ValueError("order must be 2 or 3")


def verma_vector(w: Weight, kind: str, k: int, site: int = 1,
                 nsites: int = 1) -> SuperPolynomial:
    """Closed form of the module basis vectors a_k, b_k, v_k, w_k."""
    ell, b = Q(w.ell), Q(w.b)
    two_ell = 2 * ell
    if two_ell.denominator == 1 and two_ell <= 0:
        raise SingularWeight(f"2*ell = {two_ell} is a nonpositive integer")
    one = SuperPolynomial.one(nsites)
    z = SuperPolynomial.z_var(site, nsites)
    th = SuperPolynomial.odd_var(theta(site), nsites)
    thb = SuperPolynomial.odd_var(theta_bar(site), nsites)
    zk1 = z ** (k - 1) if k >= 1 else one
    if kind == "a":
        if k == 0:
            return one
        poch = rising_factorial(two_ell, k)
        return poch * ((z - Q(k, 1) * b / two_ell * (th * thb)) * zk1)
    if kind == "b":
        if k < 1:
            raise ValueError("b_k requires k >= 1")
        poch = rising_factorial(two_ell, k)
        c = (ell - b) / two_ell * poch
        return c * ((z + (b + ell + Q(k, 2)) * (th * thb)) * zk1)
    if kind == "v":
        poch = rising_factorial(two_ell + 1, k)
        return (-(ell - b) * poch) * ((z ** k) * thb)
    if kind == "w":
        poch = rising_factorial(two_ell + 1, k)
        return (-(ell + b) * poch) * ((z ** k) * th)
    raise ValueError(f"unknown kind {kind!r}")


def raised_vector(g: SiteGenerators, kind: str, k: int) -> SuperPolynomial:
    """Independent oracle: build a_k, b_k, v_k, w_k by iterated raising."""
    one = SuperPolynomial.one(g.nsites)
    if kind == "a":
        p = one
        for _ in range(k):
            p = g["S+"].apply(p)
        return p
    if kind == "b":
        p = g["W+"].apply(g["V+"].apply(one))
        for _ in range(k - 1):
            p = g["S+"].apply(p)
        return p
    if kind == "v":
        p = g["V+"].apply(one)
    elif kind == "w":
        p = g["W+"].apply(one)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    for _ in range(k):
        p = g["S+"].apply(p)
    return p


_CHIRAL_MATRICES = {
    "S-": ((0, 0, 0), (0, 0, 0), (1, 0, 0)),
    "W-": ((0, 0, 0), (-1, 0, 0), (0, 0, 0)),
    "V-": ((0, 0, 0), (0, 0, 0), (0, 1, 0)),
    "S": ((Q(1, 2), 0, 0), (0, 0, 0), (0, 0, Q(-1, 2))),
    "S+": ((0, 0, 1), (0, 0, 0), (0, 0, 0)),
    "W+": ((0, 0, 0), (0, 0, 1), (0, 0, 0)),
    "V+": ((0, 1, 0), (0, 0, 0), (0, 0, 0)),
    "B": ((Q(-1, 2), 0, 0), (0, -1, 0), (0, 0, Q(-1, 2))),
}


def fundamental_rep(kind: str) -> FundamentalRep:
    """The two 3-dim representations; matrix convention A e_k = sum_i e_i A_ik."""
    base = {name: tuple(tuple(Q(x) for x in row) for row in m)
            for name, m in _CHIRAL_MATRICES.items()}
    if kind == "chiral":
        return FundamentalRep(kind="chiral", matrices=base)
    if kind == "antichiral":
        swap = {"V+": "W+", "W+": "V+", "V-": "W-", "W-": "V-"}
        mats = {swap.get(name, name): m for name, m in base.items()}
        mats["B"] = mat_scale(-1, mats["B"])
        return FundamentalRep(kind="antichiral", matrices=mats)
    raise ValueError(f"unknown kind {kind!r}")


def finite_subspace_vectors(n: int, kind: str, nsites: int = 1,
                            site: int = 1) -> list[SuperPolynomial]:
    """Spanning vectors of the (2n+1)-dim invariant subspace at ell = -n/2."""
    z = SuperPolynomial.z_var(site, nsites)
    th = SuperPolynomial.odd_var(theta(site), nsites)
    thb = SuperPolynomial.odd_var(theta_bar(site), nsites)
    tt = th * thb
    if kind == "chiral":
        even_core = z - Q(1, 2) * tt
        odd_var = th
    else:
        even_core = z + Q(1, 2) * tt
        odd_var = thb
    vecs = [even_core ** k for k in range(n + 1)]
    vecs += [(z ** k) * odd_var for k in range(n)]
    return vecs


def check_finite_subspace(n: int, kind: str,
                          weight_override: Weight | None = None) -> CheckReport:
    """Verify the listed span is closed under all nine generators.

    The weight is (-n/2, -n/2) for chiral and (-n/2, +n/2) for antichiral;
    `weight_override` exists so tests can show closure failing elsewhere.
    """
    t0 = time.perf_counter()
    b = Q(-n, 2) if kind == "chiral" else Q(n, 2)
    w = weight_override or Weight(Q(-n, 2), b)
    g = build_generators(1, w, nsites=1)
    span = finite_subspace_vectors(n, kind, nsites=1)
    report = CheckReport(check_name=f"finite-subspace-{kind}-n{n}",
                         params={"ell": str(w.ell), "b": str(w.b)})
    for name in GEN_NAMES:
        for j, vec in enumerate(span):
            img = g[name].apply(vec)
            if solve_in_span(span, img) is None:
                report.add_failure(f"{name} on span[{j}] = {vec.text()}",
                                   img.text(), "in span", img.text())
    report.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return report


def check_casimir(g: SiteGenerators, max_degree: int = 3) -> CheckReport:
    """Centrality of both central elements plus the order-2 lowest eigenvalue."""
    t0 = time.perf_counter()
    report = CheckReport(check_name="casimir",
                         params={"ell": str(g.weight.ell), "b": str(g.weight.b)},
                         max_degree=max_degree)
    c2, c3 = casimir(g, 2), casimir(g, 3)
    for label, c in (("C2", c2), ("C3", c3)):
        for name in GEN_NAMES:
            sub = equal_on_degree(graded_commutator(c, g[name]), Scalar(0),
                                  max_degree, nsites=g.nsites,
                                  name=f"[{label},{name}]")
            report.merge(sub, prefix=f"[{label},{name}] on ")
    ev = g.weight.ell ** 2 - g.weight.b ** 2
    one = SuperPolynomial.one(g.nsites)
    got = c2.apply(one)
    want = ev * one
    if got != want:
        report.add_failure("C2 on 1", got.text(), want.text(), (got - want).text())
    report.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return report
