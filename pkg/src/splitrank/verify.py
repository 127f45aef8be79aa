"""Seeded property suites for every module, shared by the CLI `verify`
command and the test suite.

Each suite returns a list of CheckResult; all randomness flows from one seed
so runs are reproducible.  The suites also host the independent oracles
(exhaustive Witt enumeration over F_p, brute-force change-of-basis search)
used to cross-validate the production decision procedures.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .albert import (
    AlbertAlgebra,
    bilinear,
    e0_subspace,
    jordan_mul,
    nilpotent_witness,
    norm_Q,
    phi,
    q0_data,
    quadratic_trace_form,
    so_gamma_sample,
    torus_element,
    trace,
)
from .composition import cayley_dickson
from .fields import legendre, prime_field, quad_ext, rationals
from .groups import (
    KIND_SPIN,
    VERDICT_EXCELLENT,
    f4_excellence,
    f4_kernel,
    f4_rank,
    g2_excellence,
    g2_rank,
)
from .qforms import (
    INF,
    QuadraticForm,
    _bad_primes,
    equivalent,
    equivalent_with_witness,
    hilbert_symbol,
    is_isotropic,
    isotropic_vector_search,
    pfister,
    witt_decompose,
    witt_index_by_invariants,
)

DEFAULT_SEED = 1729


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""


def _check(results, suite, name, ok, detail=""):
    results.append(CheckResult(suite, name, bool(ok), str(detail)))


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def witt_index_enumeration(coeffs: list[int], p: int) -> int:
    """Witt index over F_p by exhaustive search, in plain integers.

    Independent of the qforms machinery: finds an isotropic vector by full
    enumeration, splits its plane with hand-rolled mod-p linear algebra, and
    recurses on a lifted basis of the complement.
    """

    def q_of(v):
        return sum(c * x * x for c, x in zip(coeffs, v)) % p

    def b_of(u, v):
        return sum(c * x * y for c, x, y in zip(coeffs, u, v)) % p

    def recurse(basis) -> int:
        m = len(basis)
        if m == 0:
            return 0
        iso = None
        for ts in itertools.product(range(p), repeat=m):
            if not any(ts):
                continue
            v = [sum(t * b[i] for t, b in zip(ts, basis)) % p for i in range(len(coeffs))]
            if q_of(v) == 0:
                iso = v
                break
        if iso is None:
            return 0
        w = next(b for b in basis if b_of(iso, b) % p != 0)
        rows = [
            [b_of(iso, b) for b in basis],
            [b_of(w, b) for b in basis],
        ]
        # solve rows . t = 0 over F_p by elimination on the 2 x m system
        pivots = []
        mat = [r[:] for r in rows]
        col = 0
        for r in range(2):
            piv = next((c for c in range(col, m) if mat[r][c] % p), None)
            if piv is None:
                continue
            inv = pow(mat[r][piv], -1, p)
            mat[r] = [x * inv % p for x in mat[r]]
            for rr in range(2):
                if rr != r and mat[rr][piv] % p:
                    f = mat[rr][piv]
                    mat[rr] = [(x - f * y) % p for x, y in zip(mat[rr], mat[r])]
            pivots.append((r, piv))
            col = piv + 1
        pivot_cols = [c for _, c in pivots]
        free_cols = [c for c in range(m) if c not in pivot_cols]
        new_basis = []
        for fc in free_cols:
            t = [0] * m
            t[fc] = 1
            for r, pc in pivots:
                t[pc] = (-mat[r][fc]) % p
            vec = [sum(ti * b[i] for ti, b in zip(t, basis)) % p for i in range(len(coeffs))]
            new_basis.append(vec)
        return 1 + recurse(new_basis)

    n = len(coeffs)
    start = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return recurse(start)


def fp_equivalent_bruteforce(q1: QuadraticForm, q2: QuadraticForm) -> bool:
    """Search all invertible change-of-basis matrices over F_p (tiny dims)."""
    p = q1.field.p
    n = q1.dim
    if q2.dim != n:
        return False
    f = q1.field
    for entries in itertools.product(range(p), repeat=n * n):
        mat = [[f.element(entries[i * n + j]) for j in range(n)] for i in range(n)]
        if equivalent_with_witness(q1, q2, mat):
            return True
    return False


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_fields(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    fields = [rationals(), prime_field(7), quad_ext(2), quad_ext(-1)]
    for f in fields:
        ok = True
        for _ in range(1000):
            x, y, z = (f.random(rng) for _ in range(3))
            if (x + y) + z != x + (y + z) or (x * y) * z != x * (y * z):
                ok = False
                break
            if x * y != y * x or x + y != y + x:
                ok = False
                break
            if x * (y + z) != x * y + x * z:
                ok = False
                break
            if not y.is_zero() and (x * y) / y != x:
                ok = False
                break
        _check(out, "fields", f"axioms over {f} (1000 triples)", ok)
        ok = True
        for _ in range(100):
            x = f.random(rng)
            w = (x * x).square_root()
            if w is None or w * w != x * x:
                ok = False
                break
        _check(out, "fields", f"is_square(x^2) with witness over {f}", ok)
    for f in (rationals(), quad_ext(2), quad_ext(-1)):
        ok = True
        for _ in range(200):
            x, y = f.random(rng, nonzero=True), f.random(rng, nonzero=True)
            sx, sy, sxy = x.real_signs(), y.real_signs(), (x * y).real_signs()
            if sxy != [a * b for a, b in zip(sx, sy)]:
                ok = False
                break
        _check(out, "fields", f"real_signs multiplicative over {f}", ok)
    ok = True
    for p in (5, 7, 11, 13):
        for _ in range(100):
            a, b = rng.randint(1, 200), rng.randint(1, 200)
            if a % p == 0 or b % p == 0:
                continue
            if legendre(a, p) * legendre(b, p) != legendre(a * b, p):
                ok = False
    _check(out, "fields", "legendre multiplicativity (p in 5,7,11,13)", ok)
    return out


def _random_q_form(rng, dim, height=10) -> QuadraticForm:
    f = rationals()
    coeffs = []
    while len(coeffs) < dim:
        c = rng.randint(-height, height)
        if c:
            coeffs.append(c)
    return QuadraticForm(f, coeffs)


def suite_qforms(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    f = rationals()

    ok = True
    detail = ""
    for _ in range(25):
        q = _random_q_form(rng, rng.randint(2, 6), height=8)
        dec = witt_decompose(q)
        if dec.anisotropic_part.dim + 2 * dec.witt_index != q.dim:
            ok, detail = False, f"dim bookkeeping {q}"
            break
        if dec.witt_index != witt_index_by_invariants(q):
            ok, detail = False, f"index vs invariants {q}"
            break
        rebuilt = QuadraticForm(f, [1, -1] * dec.witt_index + list(dec.anisotropic_part.coeffs))
        if not equivalent(rebuilt, q):
            ok, detail = False, f"invariants of H^i + an vs {q}"
            break
    _check(out, "qforms", "Witt decomposition invariant bookkeeping (25 forms)", ok, detail)

    ok = True
    detail = ""
    for _ in range(50):
        q = _random_q_form(rng, rng.randint(2, 4), height=10)
        verdict = is_isotropic(q, want_witness=False)
        if verdict.isotropic:
            found = None
            bound = 1
            while bound <= 10_000 and found is None:
                found = isotropic_vector_search(q, bound)
                bound *= 2
            if found is None or not q.evaluate(found).is_zero():
                ok, detail = False, f"isotropic but no witness <= 10^4: {q}"
                break
        else:
            if isotropic_vector_search(q, 1000) is not None:
                ok, detail = False, f"anisotropic but witness found: {q}"
                break
    _check(out, "qforms", "Hasse-Minkowski vs bounded search (50 forms, dims 2-4)", ok, detail)

    ok = True
    detail = ""
    for _ in range(50):
        p = rng.choice([5, 7, 11])
        fp = prime_field(p)
        dim = rng.randint(1, 5)
        coeffs = [rng.randint(1, p - 1) for _ in range(dim)]
        q = QuadraticForm(fp, coeffs)
        dec = witt_decompose(q)
        oracle = witt_index_enumeration(coeffs, p)
        if dec.witt_index != oracle:
            ok, detail = False, f"{q}: {dec.witt_index} vs oracle {oracle}"
            break
    _check(out, "qforms", "F_p Witt index vs exhaustive enumeration (50 forms)", ok, detail)

    places = [INF, 2, 3, 5, 7, 11, 13]
    ok = True
    for _ in range(100):
        a = f.element(Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 20)))
        b = f.element(Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 20)))
        c = f.element(Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 20)))
        v = rng.choice(places)
        if hilbert_symbol(a, b, v) != hilbert_symbol(b, a, v):
            ok = False
        if hilbert_symbol(a * c, b, v) != hilbert_symbol(a, b, v) * hilbert_symbol(c, b, v):
            ok = False
        if hilbert_symbol(a, -a, v) != 1:
            ok = False
    _check(out, "qforms", "Hilbert symbol symmetry/bimultiplicativity/(a,-a)=1", ok)

    ok = True
    for _ in range(100):
        a = f.element(Fraction(rng.randint(-20, 20) or 3, rng.randint(1, 20)))
        b = f.element(Fraction(rng.randint(-20, 20) or 5, rng.randint(1, 20)))
        qa = QuadraticForm(f, [a, b])
        prod = hilbert_symbol(a, b, INF)
        for p in _bad_primes(qa):
            prod *= hilbert_symbol(a, b, p)
        if prod != 1:
            ok = False
    _check(out, "qforms", "Hilbert product formula (100 pairs)", ok)

    ok = True
    for signs in itertools.product((1, -1), repeat=3):
        q = pfister(f, [f.element(s) for s in signs])
        if is_isotropic(q, want_witness=False).isotropic:
            if witt_decompose(q).witt_index != q.dim // 2:
                ok = False
    _check(out, "qforms", "isotropic Pfister forms are hyperbolic (8 patterns)", ok)
    return out


_COMP_PARAMS_Q = [[], [2], [-1, 3], [-1, -1, -1], [1, -1, -1]]
_COMP_PARAMS_F7 = [[], [3], [1, 2], [3, 5, 6], [1, 6, 2]]


def suite_composition(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    algebras = [cayley_dickson(rationals(), ps) for ps in _COMP_PARAMS_Q]
    algebras += [cayley_dickson(prime_field(7), ps) for ps in _COMP_PARAMS_F7]

    ok = True
    detail = ""
    for alg in algebras:
        for _ in range(200):
            x, y = alg.random(rng, 4), alg.random(rng, 4)
            if (x * y).norm() != x.norm() * y.norm():
                ok, detail = False, repr(alg)
                break
    _check(out, "composition", "composition law N(xy)=N(x)N(y) (200 pairs/algebra)", ok, detail)

    ok = True
    for alg in algebras:
        if alg.dim != 8:
            continue
        for _ in range(200):
            x, y = alg.random(rng, 4), alg.random(rng, 4)
            if x * (x * y) != (x * x) * y or (y * x) * x != y * (x * x):
                ok = False
                break
    _check(out, "composition", "alternativity of octonions (200 pairs/algebra)", ok)

    ok = True
    for alg in algebras:
        for _ in range(100):
            x = alg.random(rng, 4)
            lhs = x * x - x.scale(x.trace()) + alg.one().scale(x.norm())
            if not lhs.is_zero():
                ok = False
                break
    _check(out, "composition", "x^2 - tr(x) x + N(x) = 0 (100 samples/algebra)", ok)

    ok = True
    for alg in algebras:
        form = alg.norm_form()
        for _ in range(50):
            x = alg.random(rng, 4)
            if form.evaluate(list(x.coords)) != x.norm():
                ok = False
                break
    _check(out, "composition", "norm_form evaluates to N (50 samples/algebra)", ok)

    graves = cayley_dickson(rationals(), [-1, -1, -1])
    ok = True
    for _ in range(500):
        x = graves.random(rng, 4)
        y = graves.random(rng, 4)
        if x.is_zero() or y.is_zero():
            continue
        if (x * y).is_zero():
            ok = False
            break
    _check(out, "composition", "division algebra has no zero divisors (500 pairs)", ok)
    return out


def _albert_fixtures():
    graves = cayley_dickson(rationals(), [-1, -1, -1])
    g7 = cayley_dickson(prime_field(7), [-1, -1, -1])
    return [
        AlbertAlgebra(graves, [1, -1, 1]),
        AlbertAlgebra(g7, [1, -1, 1]),
    ]


def suite_albert(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    fixtures = _albert_fixtures()

    ok = True
    for a in fixtures:
        for _ in range(200):
            x, y = a.random(rng, 3), a.random(rng, 3)
            if jordan_mul(x, y) != jordan_mul(y, x):
                ok = False
                break
    _check(out, "albert", "Jordan commutativity (200 pairs over Q and F7)", ok)

    ok = True
    for a in fixtures:
        for _ in range(200):
            x, y = a.random(rng, 3), a.random(rng, 3)
            x2 = jordan_mul(x, x)
            if jordan_mul(jordan_mul(x, y), x2) != jordan_mul(x, jordan_mul(y, x2)):
                ok = False
                break
    _check(out, "albert", "Jordan identity (200 pairs over Q and F7)", ok)

    ok = True
    for a in fixtures:
        for _ in range(200):
            x, y = a.random(rng, 3), a.random(rng, 3)
            if norm_Q(x + y) - norm_Q(x) - norm_Q(y) != bilinear(x, y):
                ok = False
                break
            if bilinear(x, y) != trace(jordan_mul(x, y)):
                ok = False
                break
    _check(out, "albert", "polarization <x,y> = Q(x+y)-Q(x)-Q(y) = tr(xy)", ok)

    ok = True
    for a in fixtures:
        form = quadratic_trace_form(a)
        for _ in range(50):
            x = a.random(rng, 3)
            if form.evaluate(list(x.coords)) != norm_Q(x):
                ok = False
                break
    _check(out, "albert", "trace form evaluates to Q (50 samples/algebra)", ok)

    q_field = rationals()
    e0_inputs = [
        (cayley_dickson(q_field, [-1, -1, -1]), [1, -1, 1]),
        (cayley_dickson(q_field, [-1, -1, -1]), [2, -2, 1]),
        (cayley_dickson(q_field, [-1, -1, -1]), [1, -4, 9]),
        (cayley_dickson(q_field, [-1, -2, -3]), [1, -1, 1]),
        (cayley_dickson(q_field, [-2, -5, -1]), [3, -3, 5]),
    ]
    ok = True
    detail = ""
    for comp, gamma in e0_inputs:
        a = AlbertAlgebra(comp, gamma)
        u = a.diag_unit(3)
        basis = e0_subspace(a, u)
        if len(basis) != 9:
            ok, detail = False, f"dim E0 != 9 for {a}"
            break
        q0, _, _ = q0_data(a, u)
        target = QuadraticForm(q_field, [1] + [-c for c in comp.norm_form().coeffs])
        if not equivalent(q0, target):
            ok, detail = False, f"q0 != <1> + (-N) for {a}"
            break
    _check(out, "albert", "E0 has dim 9, Q0 ~ <1> + (-N) (5 inputs)", ok, detail)

    a = fixtures[0]
    autos = [
        phi(a, torus_element(a.field, Fraction(5, 4), Fraction(3, 4))),
        phi(a, so_gamma_sample(a, rng)),
    ]
    ok = True
    for auto in autos:
        for _ in range(25):
            x = a.random(rng, 3)
            if norm_Q(auto.apply(x)) != norm_Q(x):
                ok = False
                break
    _check(out, "albert", "phi preserves Q (50 samples)", ok)

    ok = True
    for comp, gamma in [
        (cayley_dickson(q_field, [-1, -1, -1]), [1, -1, 1]),
        (cayley_dickson(q_field, [1, -1, -1]), [1, 1, 1]),
    ]:
        a2 = AlbertAlgebra(comp, gamma)
        z = nilpotent_witness(a2)
        if z is None or not jordan_mul(z, z).is_zero():
            ok = False
    _check(out, "albert", "nilpotent witnesses square to zero", ok)
    return out


def suite_groups(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    rng = random.Random(seed)
    out: list[CheckResult] = []
    q_field = rationals()
    graves = cayley_dickson(q_field, [-1, -1, -1])
    split = cayley_dickson(q_field, [1, -1, -1])

    table = [
        (AlbertAlgebra(graves, [1, 1, 1]), 0),
        (AlbertAlgebra(graves, [1, -1, 1]), 1),
        (AlbertAlgebra(split, [1, 1, 1]), 4),
    ]
    ok = all(f4_rank(a).rank == want for a, want in table)
    ok = ok and g2_rank(graves).rank == 0 and g2_rank(split).rank == 2
    _check(out, "groups", "pinned classification table", ok)

    ok = True
    for a, want in table:
        report = f4_rank(a)
        if (report.rank == 4) != a.octonions.is_split():
            ok = False
        if report.rank == 1:
            from .albert import albert_element_from_json

            z = albert_element_from_json(a, report.certificate["element"])
            if not jordan_mul(z, z).is_zero():
                ok = False
        if report.rank == 0:
            certs = report.certificate["slot_forms"]
            if len(certs) != 3 or any(c["isotropic"] for c in certs):
                ok = False
    _check(out, "groups", "rank certificates are constructive and consistent", ok)

    ok = True
    for a, want in table:
        kind = f4_kernel(a).kind
        expect = {0: "whole_group", 1: "spin_form", 4: "trivial"}[want]
        if kind != expect:
            ok = False
    _check(out, "groups", "kernel kind is a function of rank", ok)

    a1 = AlbertAlgebra(graves, [1, -1, 1])
    k = f4_kernel(a1)
    u = a1.diag_unit(3)
    q0, _, _ = q0_data(a1, u)
    cols = [[q_field.element(v) for v in col] for col in k.provenance["split_basis"]]
    t = [[cols[c][r] for c in range(9)] for r in range(9)]
    combo = QuadraticForm(q_field, [1, -1] + list(k.form.coeffs))
    ok = (
        k.form.dim == 7
        and not is_isotropic(k.form, want_witness=False).isotropic
        and equivalent_with_witness(q0, combo, t)
    )
    _check(out, "groups", "rank-1 kernel: 7-dim anisotropic, <1,-1> + kernel = Q0 exactly", ok)

    ok = True
    exts = [quad_ext(2), quad_ext(5), quad_ext(-1), quad_ext(-7)]
    for a in (AlbertAlgebra(graves, [1, -1, 1]), AlbertAlgebra(graves, [1, 1, 1])):
        for ext in exts:
            rep = f4_excellence(a, ext)
            if rep.verdict != VERDICT_EXCELLENT:
                ok = False
    for ext in exts:
        rep = g2_excellence(graves, ext)
        if rep.verdict != VERDICT_EXCELLENT or rep.kernel_ext.kind == KIND_SPIN:
            ok = False
    _check(out, "groups", "excellence verdicts over the quadratic panel", ok)
    return out


SUITES = {
    "fields": suite_fields,
    "qforms": suite_qforms,
    "composition": suite_composition,
    "albert": suite_albert,
    "groups": suite_groups,
}


def run_suites(names=None, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    if names is None:
        names = list(SUITES)
    results: list[CheckResult] = []
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
        results.extend(SUITES[name](seed))
    return results
