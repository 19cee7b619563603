"""Verification suites: exhaustive oracle-vs-criterion comparisons on small
groups, Wall-form law checks, the Dickson block property, and infrastructure
self-checks.  Each suite returns a JSON-ready dict with a pass/fail status
and a machine-readable failure list."""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor

from .fields import GF
from .linalg import Mat, invariant_factors, linear_elementary_divisors, eldiv_multiset
from .poly import Poly, factorize
from .symplectic import (
    SymplecticElement,
    is_unipotent_cyclic,
    random_symplectic,
    theta_class,
    wall_antitriangular,
    wall_form,
)
from .symplectic.models import symplectic_model
from .symplectic.wall import induced_on_bahn_mod_fix, theta_from_antitriangular


def _result(suite, failures, checks, params=None, status=None):
    return {
        "suite": suite,
        "status": status or ("pass" if not failures else "fail"),
        "checks": checks,
        "failures": failures,
        "params": params or {},
    }


def _skipped(suite, reason, params):
    return {
        "suite": suite, "status": "skipped", "checks": 0,
        "failures": [], "params": params, "notice": reason,
    }


def _class_loop(G, fn, jobs=1):
    classes = G.conjugacy_classes()
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, classes))
    return [fn(rec) for rec in classes]


def _groups_for(n, q, defaults):
    if q is not None:
        return [(n if n is not None else 1, q)]
    return defaults


# ---------------------------------------------------------------------------
# theorem suites
# ---------------------------------------------------------------------------

def suite_theorem4(n=None, q=None, seed=0, jobs=1):
    """criterion((x+-1)^2t even multiplicity) = oracle(two skew) = oracle(reversible)."""
    from .classify import is_two_skew_product
    from .smallgroups import cached_group, is_reversible_in, oracle_product

    params = {"n": n, "q": q, "seed": seed}
    groups = _groups_for(n, q, [(1, 3), (1, 7), (1, 11), (2, 3)])
    failures = []
    checks = 0
    for gn, gq in groups:
        if gq % 4 != 3:
            return _skipped("theorem4", f"q = {gq} is 1 mod 4, outside the hypothesis", params)
        G = cached_group(gn, gq)
        space = G.space()

        def check(rec):
            el = SymplecticElement(G.to_mat(rec.rep), space)
            crit = is_two_skew_product(el, seed=seed)
            oracle_two = oracle_product(rec.rep, G, (-1, -1)) is not None
            oracle_rev = is_reversible_in(G, rec.rep)
            ok = crit.verdict == oracle_two == oracle_rev
            if ok and crit.verdict is True and not crit.witness.verify(el):
                ok = False
            return ok, (gn, gq, rec.class_id, crit.verdict, oracle_two, oracle_rev)

        for ok, info in _class_loop(G, check, jobs):
            checks += 1
            if not ok:
                failures.append({"group": f"Sp({2*info[0]},{info[1]})", "class": info[2],
                                 "criterion": info[3], "oracle_two_skew": info[4],
                                 "oracle_reversible": info[5]})
    return _result("theorem4", failures, checks, params)


def suite_theorem2(n=None, q=None, seed=0, jobs=1):
    """is_bireflectional = oracle(two involutions); every witness re-multiplies."""
    from .classify import is_bireflectional
    from .smallgroups import cached_group, oracle_product

    params = {"n": n, "q": q, "seed": seed}
    groups = _groups_for(n, q, [(2, 3), (1, 3), (1, 7)])
    failures = []
    checks = 0
    for gn, gq in groups:
        G = cached_group(gn, gq)
        space = G.space()

        def check(rec):
            el = SymplecticElement(G.to_mat(rec.rep), space)
            crit = is_bireflectional(el, group=G, seed=seed)
            oracle = oracle_product(rec.rep, G, (1, 1)) is not None
            ok = crit.verdict == oracle
            if ok and crit.verdict is True and not crit.witness.verify(el):
                ok = False
            return ok, (gn, gq, rec.class_id, crit.verdict, oracle)

        for ok, info in _class_loop(G, check, jobs):
            checks += 1
            if not ok:
                failures.append({"group": f"Sp({2*info[0]},{info[1]})", "class": info[2],
                                 "criterion": info[3], "oracle": info[4]})
    return _result("theorem2", failures, checks, params)


def suite_theorem5(n=None, q=None, seed=0, jobs=1):
    """is_inv_skew_product = oracle(involution x skew-involution); the PSp
    corollary verdict is false everywhere at dim <= 4."""
    from .classify import is_inv_skew_product, psp_reversible_not_bireflectional
    from .smallgroups import cached_group, oracle_product

    params = {"n": n, "q": q, "seed": seed}
    groups = _groups_for(n, q, [(2, 3), (1, 3), (1, 7)])
    failures = []
    checks = 0
    for gn, gq in groups:
        if gq % 4 != 3:
            return _skipped("theorem5", f"q = {gq} is 1 mod 4, outside the hypothesis", params)
        G = cached_group(gn, gq)
        space = G.space()

        def check(rec):
            el = SymplecticElement(G.to_mat(rec.rep), space)
            crit = is_inv_skew_product(el, seed=seed)
            oracle = oracle_product(rec.rep, G, (1, -1)) is not None
            ok = crit.verdict == oracle
            if ok and crit.verdict is True and not crit.witness.verify(el):
                ok = False
            psp = psp_reversible_not_bireflectional(el, group=G, seed=seed)
            if psp.verdict is not False:
                ok = False
            return ok, (gn, gq, rec.class_id, crit.verdict, oracle, psp.verdict)

        for ok, info in _class_loop(G, check, jobs):
            checks += 1
            if not ok:
                failures.append({"group": f"Sp({2*info[0]},{info[1]})", "class": info[2],
                                 "criterion": info[3], "oracle": info[4], "psp": info[5]})
    return _result("theorem5", failures, checks, params)


def corollary_example(seed=0):
    """The 8-dimensional element over GF(3) meeting the corollary conditions."""
    from .symplectic import SymplecticSpace
    from .symplectic.models import direct_sum

    F3 = GF(3)
    phi1 = symplectic_model(Mat.companion(Poly(F3, [1, 0, 1]) ** 2))
    J = Mat(F3, [[1, 1], [0, 1]])
    V2 = SymplecticSpace(F3, 2)
    phi2 = SymplecticElement(J, V2)
    phi3 = SymplecticElement(-(J.inverse()), V2)
    return direct_sum(phi1, phi2, phi3)


def suite_corollary(n=None, q=None, seed=0, jobs=1):
    """The reversible-but-not-bireflectional phenomenon at dimension 8."""
    from .classify import (
        is_bireflectional,
        is_reversible_sp,
        psp_reversible_not_bireflectional,
    )

    params = {"seed": seed}
    failures = []
    phi = corollary_example(seed)
    checks = 0
    psp = psp_reversible_not_bireflectional(phi, seed=seed)
    checks += 1
    if psp.verdict is not True or psp.witness is None:
        failures.append({"check": "psp verdict true with witness", "got": str(psp.verdict)})
    else:
        a = psp.witness.conjugator
        if a.inverse() @ phi.matrix @ a != -phi.matrix.inverse():
            failures.append({"check": "reverser conjugates to -phi^-1"})
        checks += 1
    biref = is_bireflectional(phi, seed=seed)
    checks += 1
    if biref.verdict is not False:
        failures.append({"check": "bireflectional false at the example", "got": str(biref.verdict)})
    rev = is_reversible_sp(phi, seed=seed)
    checks += 1
    if rev.verdict is not False:
        failures.append({"check": "Sp-reversibility false at the example", "got": str(rev.verdict)})
    table = eldiv_multiset(phi.matrix)
    F3 = GF(3)
    x2p1 = Poly(F3, [1, 0, 1])
    checks += 2
    if table.get((x2p1, 2), 0) % 2 != 1:
        failures.append({"check": "(x^2+1)^2 odd multiplicity"})
    if table.get((Poly.x_minus(F3, 1), 2), 0) % 2 != 1:
        failures.append({"check": "(x-1)^2 odd multiplicity"})
    return _result("corollary", failures, checks, params)


# ---------------------------------------------------------------------------
# Wall suite
# ---------------------------------------------------------------------------

def _antitriangular_conditions(A: Mat, el) -> list[str]:
    """The six conditions of the antitriangular normal form."""
    F = A.field
    size = A.nrows
    n = (size + 1) // 2
    bad = []

    def a(i, j):
        if 1 <= i <= size and 1 <= j <= size:
            return A.rows[i - 1][j - 1]
        return F.zero

    for i in range(1, size + 1):
        if i <= n - 2 and a(i, i) != F.zero:
            bad.append(f"(1) a[{i},{i}] != 0")
        for j in range(1, size + 1):
            if i >= 2 and a(i, j) != F.neg(a(j + 1, i - 1)):
                bad.append(f"(2) at ({i},{j})")
            if F.sub(a(i, j), a(j, i)) != a(i + 1, j):
                bad.append(f"(3) at ({i},{j})")
            if i + j >= 2 * n + 1 and a(i, j) != F.zero:
                bad.append(f"(4) at ({i},{j})")
    corner = a(1, 2 * n - 1)
    for j in range(1, size + 1):
        want = corner if (j - 1) % 2 == 0 else F.neg(corner)
        if a(j, 2 * n - j) != want:
            bad.append(f"(5) at j={j}")
    sign = F.one if (n + 1) % 2 == 0 else F.neg(F.one)
    theta_rep = F.mul(sign, a(n, n))
    if theta_rep == F.zero or F.square_class(theta_rep) != theta_class(el):
        bad.append("(6) a[n,n] sign-theta mismatch")
    return bad


def suite_wall(n=None, q=None, seed=0, jobs=1):
    from .smallgroups import cached_group, oracle_conjugate
    from .symplectic import random_conjugate

    params = {"seed": seed}
    failures = []
    checks = 0
    rng = random.Random(seed)

    # (a) conditions (1)-(6) + constancy on conjugates: Sp(4,3) exhaustively
    # over its unipotent cyclic classes, Sp(6,3) on a sampled model
    F3 = GF(3)
    bases = []
    G43 = cached_group(2, 3)
    space43 = G43.space()
    for rec in G43.conjugacy_classes():
        el = SymplecticElement(G43.to_mat(rec.rep), space43)
        if is_unipotent_cyclic(el):
            bases.append((4, el, 50))
    bases.append((6, symplectic_model(Mat.companion(Poly.x_minus(F3, 1) ** 6)), 25))
    for dim, base, trials in bases:
        A0 = wall_antitriangular(base)
        bad = _antitriangular_conditions(A0, base)
        checks += 1
        if bad:
            failures.append({"check": f"antitriangular conditions dim {dim}", "detail": bad[:4]})
        for _ in range(trials):
            conj = random_conjugate(base, rng)
            checks += 1
            if wall_antitriangular(conj) != A0:
                failures.append({"check": f"antitriangular constancy dim {dim}"})
                break

    # (b) WALL5 exhaustive: theta-class equality iff conjugacy, unipotent cyclic classes
    for gn, gq in [(1, 3), (2, 3)]:
        G = cached_group(gn, gq)
        space = G.space()
        uc = []
        for rec in G.conjugacy_classes():
            el = SymplecticElement(G.to_mat(rec.rep), space)
            if is_unipotent_cyclic(el):
                uc.append((rec, el))
        for i, (rec1, el1) in enumerate(uc):
            for rec2, el2 in uc[i:]:
                same_theta = theta_class(el1) == theta_class(el2)
                conj = oracle_conjugate(rec1.rep, rec2.rep, G) is not None
                checks += 1
                if same_theta != conj:
                    failures.append({
                        "check": "WALL5", "group": f"Sp({2*gn},{gq})",
                        "classes": [rec1.class_id, rec2.class_id],
                    })

    # (c) WALL6: Theta(phi) = -Theta(phi-hat) on unipotent cyclic phi
    for dim in (2, 4, 6):
        el = symplectic_model(Mat.companion(Poly.x_minus(F3, 1) ** dim))
        for variant in range(4):
            cand = random_conjugate(el, rng) if variant else el
            data = wall_form(cand)
            hat = induced_on_bahn_mod_fix(cand)
            checks += 1
            if hat.dim == 0:
                continue
            hat_data = wall_form(hat)
            lhs = data.theta
            rhs = F3.neg(hat_data.theta)
            if F3.square_class(F3.mul(lhs, rhs)) != "square":
                failures.append({"check": "WALL6", "dim": dim})
            # the antitriangular corner gives the same class
            t_rep = theta_from_antitriangular(cand)
            checks += 1
            if F3.square_class(F3.mul(t_rep, data.theta)) != "square":
                failures.append({"check": "theta via antitriangular", "dim": dim})
    return _result("wall", failures, checks, params)


# ---------------------------------------------------------------------------
# Dickson and infrastructure suites
# ---------------------------------------------------------------------------

def suite_dickson(n=None, q=None, seed=0, jobs=1):
    params = {"q": q, "seed": seed}
    fields = [GF(q)] if q else [GF(3), GF(5), GF(7)]
    rng = random.Random(seed)
    failures = []
    checks = 0
    trials = 500
    for field in fields:
        for _ in range(trials):
            m = rng.randrange(1, 7)
            D = Mat(field, [[rng.randrange(field.p) for _ in range(m)] for _ in range(m)])
            I = Mat.identity(field, m)
            Z = Mat.zeros(field, m, m)
            P = Mat.block2(field, Z, I, -I, D)
            want = sorted((f.dickson() for f in invariant_factors(D)), key=lambda f: f.sort_key())
            got = invariant_factors(P)
            checks += 1
            if got != want:
                failures.append({"field": field.p, "D": D.to_json()["rows"]})
    return _result("dickson", failures, checks, params)


# ---------------------------------------------------------------------------
# randomized witness inputs (soundness at scale)
# ---------------------------------------------------------------------------

def _rand_invertible(field, rng, d):
    while True:
        A = Mat(field, [[rng.randrange(field.p) for _ in range(d)] for _ in range(d)])
        if A.inverse() is not None:
            return A


def _rand_palindromic(field, rng, d):
    """Monic self-reciprocal polynomial of degree d with constant term 1."""
    inner = d - 1
    free = [rng.randrange(field.p) for _ in range((inner + 1) // 2)]
    mirrored = free + list(reversed(free[: inner // 2]))
    f = Poly(field, [field.one] + mirrored + [field.one])
    assert f.degree == d and f == f.reciprocal()
    return f


def _diag_block(field, A):
    from .symplectic import SymplecticSpace

    P = Mat.diag_blocks(field, [A, A.transpose_inverse()])
    return SymplecticElement(P, SymplecticSpace(field, 2 * A.nrows))


def random_witness_input(kind: str, field, rng) -> SymplecticElement:
    """A random Sp-conjugate of a block construction meeting the stated
    preconditions for the given witness kind (dims 4 to 8)."""
    from .symplectic import SymplecticSpace, random_conjugate
    from .symplectic.models import direct_sum

    q = field.p
    x2p1 = Poly(field, [field.one, field.zero, field.one])

    def conj_inv(d):
        A = _rand_invertible(field, rng, d)
        C = Mat.companion(_rand_palindromic(field, rng, d))
        return A.inverse() @ C @ A

    def plane(sign):
        return SymplecticElement(
            Mat.scalar(field, 2, field.canon(sign)), SymplecticSpace(field, 2)
        )

    def skewsum_block(d):
        C = _rand_invertible(field, rng, d)
        I = Mat.identity(field, d)
        Z = Mat.zeros(field, d, d)
        return _diag_block(field, Mat.block2(field, Z, I, C, Z))

    def transvection_pair():
        sq, nsq = field.one, field.square_class_rep(2 if field.is_square(2) is False else 3)
        if field.kind == "prime":
            nsq = next(c for c in range(2, q) if not field.is_square(c))
        a = SymplecticElement(Mat(field, [[1, 1], [0, 1]]), SymplecticSpace(field, 2))
        b = SymplecticElement(-Mat(field, [[1, nsq], [0, 1]]), SymplecticSpace(field, 2))
        del sq
        return direct_sum(a, b)

    if kind == "two_involutions":
        recipes = [
            lambda: _diag_block(field, conj_inv(2)),
            lambda: _diag_block(field, conj_inv(3)),
            lambda: _diag_block(field, conj_inv(4)),
            lambda: direct_sum(_diag_block(field, conj_inv(2)), _diag_block(field, conj_inv(2))),
        ]
    elif kind in ("two_skew_involutions", "reverser"):
        def nonhyp_pair():
            mdl = symplectic_model(Mat.companion(x2p1 ** 2))
            sq_el = SymplecticElement(mdl.matrix @ mdl.matrix, mdl.space)
            if rng.random() < 0.5:
                return SymplecticElement(-sq_el.matrix, sq_el.space)
            return sq_el

        recipes = [
            lambda: _diag_block(field, _rand_invertible(field, rng, 2)),
            lambda: _diag_block(field, _rand_invertible(field, rng, 3)),
            lambda: _diag_block(field, _rand_invertible(field, rng, 4)),
            lambda: symplectic_model(Mat.companion(x2p1 ** 2)),
            lambda: direct_sum(symplectic_model(Mat.companion(x2p1)), plane(1)),
            nonhyp_pair,
            lambda: direct_sum(nonhyp_pair(), plane(-1), plane(1)),
        ]
    elif kind == "involution_skew":
        recipes = [
            lambda: direct_sum(symplectic_model(Mat.companion(x2p1)), plane(1), plane(-1)),
            lambda: symplectic_model(Mat.companion(x2p1 ** 3)),
            lambda: skewsum_block(1),
            lambda: skewsum_block(2),
            lambda: transvection_pair(),
            lambda: direct_sum(transvection_pair(), symplectic_model(Mat.companion(x2p1))),
            lambda: direct_sum(
                symplectic_model(Mat.companion(x2p1 ** 2)),
                symplectic_model(Mat.companion(x2p1 ** 2)),
            ),
        ]
    else:
        raise ValueError(f"unknown witness kind {kind!r}")
    base = recipes[rng.randrange(len(recipes))]()
    return random_conjugate(base, rng, steps=8)


def suite_invariants(n=None, q=None, seed=0, jobs=1):
    from .smallgroups import cached_group, sp_order, MANDATORY
    from .symplectic import is_symplectic

    params = {"seed": seed}
    rng = random.Random(seed)
    failures = []
    checks = 0
    for gn, gq in MANDATORY:
        G = cached_group(gn, gq)
        checks += 1
        if G.order != sp_order(gn, gq):
            failures.append({"check": "group order", "group": f"Sp({2*gn},{gq})"})
        space = G.space()
        sample = sorted(G.elements)[:: max(1, G.order // 50)]
        for data in sample:
            checks += 1
            if not is_symplectic(G.to_mat(data), space):
                failures.append({"check": "membership", "group": f"Sp({2*gn},{gq})"})
                break
    for p in (3, 7):
        field = GF(p)
        for _ in range(200):
            m = rng.randrange(1, 5)
            A = Mat(field, [[rng.randrange(p) for _ in range(m)] for _ in range(m)])
            table = eldiv_multiset(A)
            checks += 1
            for c in range(p):
                expected = sorted(
                    (t, mm) for (pp, t), mm in table.items()
                    if pp == Poly.x_minus(field, c)
                )
                if expected != linear_elementary_divisors(A, c):
                    failures.append({"check": "linear eldivs", "p": p})
                    break
    for p in (3, 5, 7):
        field = GF(p)
        for _ in range(500):
            deg = rng.randrange(1, 9)
            f = Poly(field, [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)])
            checks += 1
            if factorize(f, seed=seed).product(field) != f:
                failures.append({"check": "factorization product", "p": p})
    return _result("invariants", failures, checks, params)
