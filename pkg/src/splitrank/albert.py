"""Albert algebras H(C; g1, g2, g3): 3x3 matrices over an octonion algebra C,
hermitian with respect to Gamma = diag(g1, g2, g3), under the symmetrized
product x y = (x.y + y.x)/2.

Elements are stored as 27 coordinates (x1, x2, x3, c1, c2, c3) -- three
diagonal scalars and three octonion slots -- so Gamma-hermitianness is
structural.  The raw matrix product is materialized only inside matrix_mul
and when building the sparse Jordan multiplication table.

Slot positions follow the defining matrix:

        [ x1            c3          (g3/g1) conj(c2) ]
        [ (g1/g2) conj(c3)  x2      c1               ]
        [ c2            (g2/g3) conj(c1)   x3        ]
"""

from __future__ import annotations

import random as _random

from .composition import CompElement, CompositionAlgebra, base_change_comp
from .errors import (
    AlgebraMismatch,
    InternalCheckFailed,
    InvalidInput,
    NotGammaOrthogonal,
    NotOnTorus,
    NotPrimitiveIdempotent,
    SingularCayley,
    UnsupportedIdempotent,
    ZeroParameter,
)
from .fields import Field, FieldElement
from .qforms import GramMatrix, IsotropyResult, QuadraticForm, diagonalize, is_isotropic, _escalating_search
from . import linalg

DIM = 27
_SLOT_OFFSET = (3, 11, 19)  # coordinate offsets of the c1, c2, c3 blocks


class AlbertAlgebra:
    """H(C; Gamma) for an octonion algebra C and invertible diagonal Gamma."""

    def __init__(self, octonions: CompositionAlgebra, gamma):
        if octonions.dim != 8:
            raise InvalidInput("the coordinate algebra must be an octonion algebra")
        gamma = tuple(octonions.field.element(g) for g in gamma)
        if len(gamma) != 3:
            raise InvalidInput("Gamma must have exactly three entries")
        if any(g.is_zero() for g in gamma):
            raise ZeroParameter("Gamma entries must be nonzero")
        self.octonions = octonions
        self.gamma = gamma
        self.field = octonions.field
        self._jordan_table: dict | None = None
        half = (self.field.one() + self.field.one()).inv()
        self._half = half

    # ----------------------------------------------------------------- basics
    def __eq__(self, other):
        return (
            isinstance(other, AlbertAlgebra)
            and self.octonions == other.octonions
            and self.gamma == other.gamma
        )

    def __hash__(self):
        return hash((self.octonions, self.gamma))

    def __repr__(self):
        g = ",".join(str(x) for x in self.gamma)
        return f"H({self.octonions!r}; {g})"

    def zero(self) -> AlbertElement:
        return AlbertElement(self, [self.field.zero()] * DIM)

    def unit(self) -> AlbertElement:
        coords = [self.field.zero()] * DIM
        for i in range(3):
            coords[i] = self.field.one()
        return AlbertElement(self, coords)

    def diag_unit(self, i: int) -> AlbertElement:
        """The matrix unit E_ii (i in 1..3)."""
        coords = [self.field.zero()] * DIM
        coords[i - 1] = self.field.one()
        return AlbertElement(self, coords)

    def basis(self, idx: int) -> AlbertElement:
        coords = [self.field.zero()] * DIM
        coords[idx] = self.field.one()
        return AlbertElement(self, coords)

    def element(self, xs, cs) -> AlbertElement:
        """Build from three scalars and three octonion coordinate vectors."""
        coords = [self.field.element(x) for x in xs]
        if len(coords) != 3:
            raise InvalidInput("need three diagonal scalars")
        for c in cs:
            block = c.coords if isinstance(c, CompElement) else c
            coords.extend(self.field.element(v) for v in block)
        if len(coords) != DIM:
            raise InvalidInput("need three octonion slots of eight coordinates")
        return AlbertElement(self, coords)

    def random(self, rng, height: int = 4) -> AlbertElement:
        return AlbertElement(self, [self.field.random(rng, height) for _ in range(DIM)])

    def to_json(self) -> dict:
        return {
            "octonion": self.octonions.to_json(),
            "gamma": [str(g) for g in self.gamma],
        }

    # ---------------------------------------------------------- jordan table
    def _table(self) -> dict:
        if self._jordan_table is None:
            key = (self.field, self.octonions.params, self.gamma)
            cached = _JORDAN_TABLE_CACHE.get(key)
            if cached is None:
                cached = {}
                for i in range(DIM):
                    bi = self.basis(i)
                    for j in range(i, DIM):
                        bj = self.basis(j)
                        prod = _jordan_from_matrices(self, bi, bj)
                        entries = [
                            (k, c) for k, c in enumerate(prod.coords) if not c.is_zero()
                        ]
                        if entries:
                            cached[(i, j)] = entries
                _JORDAN_TABLE_CACHE[key] = cached
            self._jordan_table = cached
        return self._jordan_table


_JORDAN_TABLE_CACHE: dict = {}


class AlbertElement:
    """27-coordinate element (x1, x2, x3, c1, c2, c3)."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: AlbertAlgebra, coords):
        if len(coords) != DIM:
            raise InvalidInput(f"need {DIM} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = tuple(coords)

    # ------------------------------------------------------------- structure
    @property
    def xs(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        return self.coords[0:3]

    def slot(self, i: int) -> CompElement:
        """Octonion slot c_i, i in 1..3."""
        off = _SLOT_OFFSET[i - 1]
        return CompElement(self.algebra.octonions, self.coords[off : off + 8])

    def _check(self, other) -> AlbertElement:
        if not isinstance(other, AlbertElement) or other.algebra != self.algebra:
            raise AlgebraMismatch("elements from different Albert algebras")
        return other

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, AlbertElement)
            and other.algebra == self.algebra
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((self.algebra, self.coords))

    def __add__(self, other):
        other = self._check(other)
        return AlbertElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        other = self._check(other)
        return AlbertElement(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AlbertElement(self.algebra, [-a for a in self.coords])

    def scale(self, factor) -> AlbertElement:
        factor = self.algebra.field.element(factor)
        return AlbertElement(self.algebra, [factor * c for c in self.coords])

    def __repr__(self):
        xs = ",".join(str(x) for x in self.xs)
        return f"Albert(diag={xs}, c1={self.slot(1)!r}, c2={self.slot(2)!r}, c3={self.slot(3)!r})"

    def to_json(self) -> dict:
        return {
            "x": [str(x) for x in self.xs],
            "c": [self.slot(i).to_json() for i in (1, 2, 3)],
        }


def albert_element_from_json(algebra: AlbertAlgebra, obj: dict) -> AlbertElement:
    if not isinstance(obj, dict) or "x" not in obj or "c" not in obj:
        raise InvalidInput(f"bad Albert element: {obj!r}")
    return algebra.element(obj["x"], obj["c"])


# ---------------------------------------------------------------------------
# matrix form and products
# ---------------------------------------------------------------------------

def to_matrix(x: AlbertElement) -> list[list[CompElement]]:
    """The literal Gamma-hermitian 3x3 octonion matrix of x."""
    a = x.algebra
    c = a.octonions
    g1, g2, g3 = a.gamma
    x1, x2, x3 = x.xs
    c1, c2, c3 = x.slot(1), x.slot(2), x.slot(3)
    return [
        [c.scalar(x1), c3, c2.conj().scale(g3 / g1)],
        [c3.conj().scale(g1 / g2), c.scalar(x2), c1],
        [c2, c1.conj().scale(g2 / g3), c.scalar(x3)],
    ]


def from_matrix(a: AlbertAlgebra, m, check: bool = True) -> AlbertElement:
    """Read an element back from a 3x3 octonion matrix.

    With check=True the matrix must be exactly Gamma-hermitian with scalar
    diagonal; a violation is an internal-consistency failure, not user error.
    """
    g1, g2, g3 = a.gamma
    for i in range(3):
        if not m[i][i].is_scalar():
            raise InternalCheckFailed("diagonal entry is not a scalar")
    c3, c1, c2 = m[0][1], m[1][2], m[2][0]
    if check:
        ok = (
            m[1][0] == c3.conj().scale(g1 / g2)
            and m[2][1] == c1.conj().scale(g2 / g3)
            and m[0][2] == c2.conj().scale(g3 / g1)
        )
        if not ok:
            raise InternalCheckFailed("matrix is not Gamma-hermitian")
    xs = [m[0][0].scalar_part(), m[1][1].scalar_part(), m[2][2].scalar_part()]
    return a.element(xs, [c1, c2, c3])


def matrix_mul(x: AlbertElement, y: AlbertElement) -> list[list[CompElement]]:
    """The raw (non-hermitian) matrix product x.y with octonion entries."""
    x._check(y)
    mx, my = to_matrix(x), to_matrix(y)
    out = []
    for i in range(3):
        row = []
        for k in range(3):
            acc = mx[i][0] * my[0][k]
            for j in (1, 2):
                acc = acc + mx[i][j] * my[j][k]
            row.append(acc)
        out.append(row)
    return out


def _jordan_from_matrices(a: AlbertAlgebra, x: AlbertElement, y: AlbertElement) -> AlbertElement:
    mx, my = matrix_mul(x, y), matrix_mul(y, x)
    sym = [[(mx[i][j] + my[i][j]).scale(a._half) for j in range(3)] for i in range(3)]
    return from_matrix(a, sym, check=True)


def jordan_mul(x: AlbertElement, y: AlbertElement) -> AlbertElement:
    """x y = (x.y + y.x)/2.

    Uses the cached sparse structure-constant table; for sparse one-off
    operands before any table exists, the direct matrix route is cheaper
    than building the table, and the two routes agree exactly.
    """
    x._check(y)
    a = x.algebra
    if a._jordan_table is None:
        nx = sum(1 for c in x.coords if not c.is_zero())
        ny = sum(1 for c in y.coords if not c.is_zero())
        if nx <= 6 and ny <= 6:
            return _jordan_from_matrices(a, x, y)
    table = a._table()
    out = [a.field.zero()] * DIM
    xc, yc = x.coords, y.coords
    for (i, j), entries in table.items():
        if i == j:
            coeff = xc[i] * yc[i]
        else:
            coeff = xc[i] * yc[j] + xc[j] * yc[i]
        if coeff.is_zero():
            continue
        for k, c in entries:
            out[k] = out[k] + coeff * c
    return AlbertElement(a, out)


def trace(x: AlbertElement) -> FieldElement:
    x1, x2, x3 = x.xs
    return x1 + x2 + x3


def norm_Q(x: AlbertElement) -> FieldElement:
    """Q(x) = tr(x^2)/2 with x^2 the Jordan square."""
    return trace(jordan_mul(x, x)) * x.algebra._half


def bilinear(x: AlbertElement, y: AlbertElement) -> FieldElement:
    """<x, y> = tr(xy) = Q(x+y) - Q(x) - Q(y)."""
    return trace(jordan_mul(x, y))


def quadratic_trace_form(a: AlbertAlgebra) -> QuadraticForm:
    """Q as a 27-dim diagonal form on the canonical coordinates.

    The canonical basis is already Q-orthogonal, so diagonalization is the
    identity; the result is checked against the closed block form
    <1/2,1/2,1/2> + (g2/g3) N + (g3/g1) N + (g1/g2) N.
    """
    basis = [a.basis(i) for i in range(DIM)]
    half = a._half
    gram = [
        [bilinear(basis[i], basis[j]) * half for j in range(DIM)]
        for i in range(DIM)
    ]
    form, p = diagonalize(GramMatrix(a.field, gram))
    if not linalg.mat_eq(p, linalg.identity(a.field, DIM)):
        raise InternalCheckFailed("canonical Albert basis should be Q-orthogonal")
    g1, g2, g3 = a.gamma
    n = a.octonions.norm_form().coeffs
    expected = [half, half, half]
    for ratio in (g2 / g3, g3 / g1, g1 / g2):
        expected.extend(ratio * c for c in n)
    if list(form.coeffs) != expected:
        raise InternalCheckFailed("trace form disagrees with its block closed form")
    return QuadraticForm(a.field, form.coeffs, label="trace form")


# ---------------------------------------------------------------------------
# idempotents and nilpotents
# ---------------------------------------------------------------------------

def is_idempotent(x: AlbertElement) -> bool:
    return not x.is_zero() and jordan_mul(x, x) == x


def is_primitive_idempotent(x: AlbertElement) -> bool:
    """Idempotent with Q(u) = 1/2."""
    return is_idempotent(x) and norm_Q(x) == x.algebra._half


def is_nilpotent(z: AlbertElement) -> bool:
    """z != 0 with z^2 = 0 or z^3 = 0 (degree <= 3 by power-associativity)."""
    if z.is_zero():
        return False
    z2 = jordan_mul(z, z)
    if z2.is_zero():
        return True
    return jordan_mul(z2, z).is_zero()


# The three off-diagonal slot configurations: for the diagonal pair (j, k)
# the element diag(.., t, .., -t, ..) + c in the slot between j and k has
# Jordan square (t^2 + ratio * N(c)) (E_jj + E_kk).
def _nilpotent_configs(a: AlbertAlgebra):
    g1, g2, g3 = a.gamma
    return [
        {"pair": (2, 3), "slot": 1, "diag": (0, 1, -1), "ratio": g2 / g3},
        {"pair": (3, 1), "slot": 2, "diag": (-1, 0, 1), "ratio": g3 / g1},
        {"pair": (1, 2), "slot": 3, "diag": (1, -1, 0), "ratio": g1 / g2},
    ]


def _nilpotent_test_form(a: AlbertAlgebra, config) -> QuadraticForm:
    n = a.octonions.norm_form()
    coeffs = [a.field.one()] + [config["ratio"] * c for c in n.coeffs]
    return QuadraticForm(a.field, coeffs)


def _build_slot_nilpotent(a: AlbertAlgebra, config, witness) -> AlbertElement:
    t = witness[0]
    c = list(witness[1:])
    coords = [a.field.zero()] * DIM
    for i, sgn in enumerate(config["diag"]):
        if sgn:
            coords[i] = t if sgn > 0 else -t
    off = _SLOT_OFFSET[config["slot"] - 1]
    for i, v in enumerate(c):
        coords[off + i] = v
    z = AlbertElement(a, coords)
    if z.is_zero() or not jordan_mul(z, z).is_zero():
        raise InternalCheckFailed("constructed slot element is not square-zero")
    return z


def nilpotent_analysis(a: AlbertAlgebra):
    """(witness element or None, the three per-slot isotropy certificates).

    Tests the three forms <1> + (g_j/g_k) N; an isotropic one yields an
    explicit square-zero element, all-anisotropic yields None with proofs.
    An explicit vector is searched only for the first isotropic form.
    """
    certificates: list[IsotropyResult] = []
    witness = None
    for config in _nilpotent_configs(a):
        form = _nilpotent_test_form(a, config)
        res = is_isotropic(form, want_witness=False)
        certificates.append(res)
        if res.isotropic and witness is None:
            vec = _escalating_search(form)
            if vec is None:
                raise InternalCheckFailed(
                    "isotropy certified but no explicit vector found for a "
                    "slot form; cannot build the nilpotent element"
                )
            res.witness = vec
            res.method = "explicit_witness"
            witness = _build_slot_nilpotent(a, config, vec)
    return witness, certificates


def nilpotent_witness(a: AlbertAlgebra) -> AlbertElement | None:
    witness, _ = nilpotent_analysis(a)
    return witness


def orthogonal_nilpotent_pair(a: AlbertAlgebra):
    """Two non-proportional orthogonal square-zero elements, or None.

    Constructed only when C is split: a trace-zero isotropic octonion c has
    c^2 = 0, and placing it in the c1 and c3 slots gives elements whose
    Jordan product vanishes identically.
    """
    c_alg = a.octonions
    if not c_alg.is_split():
        return None
    pure = c_alg.pure_norm_form()
    vec = _escalating_search(pure)
    if vec is None:
        res = is_isotropic(pure, want_witness=True)
        vec = res.witness
    if vec is None:
        raise InternalCheckFailed("split octonions but no isotropic pure vector found")
    c = CompElement(c_alg, [c_alg.field.zero()] + list(vec))
    if c.is_zero() or not (c * c).is_zero():
        raise InternalCheckFailed("pure isotropic vector should square to zero")
    zero8 = c_alg.zero()
    z1 = a.element([0, 0, 0], [c, zero8, zero8])
    z2 = a.element([0, 0, 0], [zero8, zero8, c])
    for z in (z1, z2):
        if not jordan_mul(z, z).is_zero():
            raise InternalCheckFailed("slot nilpotent fails square-zero")
    if not jordan_mul(z1, z2).is_zero():
        raise InternalCheckFailed("slot nilpotents are not orthogonal")
    return z1, z2


# ---------------------------------------------------------------------------
# the subspace E0 and the form Q0
# ---------------------------------------------------------------------------

def e0_subspace(a: AlbertAlgebra, u: AlbertElement) -> list[AlbertElement]:
    """Ordered basis of E0 = {x : <x,1> = <x,u> = 0, ux = 0} for u = E33.

    The basis is diag(1,-1,0) followed by the eight c3-slot vectors; each
    vector is verified against all three defining conditions.
    """
    if not is_primitive_idempotent(u):
        raise NotPrimitiveIdempotent("E0 needs a primitive idempotent")
    if u != a.diag_unit(3):
        raise UnsupportedIdempotent(
            "E0/Q0 are implemented for the normalized idempotent E33; move "
            "your idempotent there with an explicit automorphism first"
        )
    coords0 = [a.field.zero()] * DIM
    coords0[0] = a.field.one()
    coords0[1] = -a.field.one()
    basis = [AlbertElement(a, coords0)]
    off = _SLOT_OFFSET[2]
    for i in range(8):
        coords = [a.field.zero()] * DIM
        coords[off + i] = a.field.one()
        basis.append(AlbertElement(a, coords))
    one = a.unit()
    for b in basis:
        if not bilinear(b, one).is_zero():
            raise InternalCheckFailed("E0 vector not orthogonal to 1")
        if not bilinear(b, u).is_zero():
            raise InternalCheckFailed("E0 vector not orthogonal to u")
        if not jordan_mul(u, b).is_zero():
            raise InternalCheckFailed("E0 vector not killed by u")
    return basis


def q0_data(a: AlbertAlgebra, u: AlbertElement):
    """(q0 form, E0 basis, 9x9 Gram of the polar form of Q on E0)."""
    basis = e0_subspace(a, u)
    half = a._half
    gram = [
        [bilinear(bi, bj) * half for bj in basis]
        for bi in basis
    ]
    form, p = diagonalize(GramMatrix(a.field, gram))
    if not linalg.mat_eq(p, linalg.identity(a.field, 9)):
        raise InternalCheckFailed("E0 basis should diagonalize Q0 on the nose")
    return QuadraticForm(a.field, form.coeffs, label="Q0"), basis, gram


def q0_form(a: AlbertAlgebra, u: AlbertElement) -> QuadraticForm:
    """Restriction of Q to E0, diagonalized: <1> + (g1/g2) N."""
    form, _, _ = q0_data(a, u)
    return form


# ---------------------------------------------------------------------------
# Gamma-orthogonal matrices and the automorphisms they induce
# ---------------------------------------------------------------------------

def gamma_matrix(a: AlbertAlgebra):
    z = a.field.zero()
    g1, g2, g3 = a.gamma
    return [[g1, z, z], [z, g2, z], [z, z, g3]]


def torus_element(field: Field, av, bv):
    """[[a,b,0],[b,a,0],[0,0,1]] with a^2 - b^2 = 1 exactly."""
    av, bv = field.element(av), field.element(bv)
    if av * av - bv * bv != field.one():
        raise NotOnTorus(f"a^2 - b^2 = {av * av - bv * bv} != 1")
    z, one = field.zero(), field.one()
    return [[av, bv, z], [bv, av, z], [z, z, one]]


def so_gamma_sample(a: AlbertAlgebra, rng, retries: int = 50):
    """Random X with X^T Gamma X = Gamma, det X = 1, via the Cayley transform
    X = (I - S)(I + S)^(-1) over S = Gamma^(-1) K with K skew."""
    f = a.field
    ident = linalg.identity(f, 3)
    for _ in range(retries):
        k12 = f.random(rng, 3)
        k13 = f.random(rng, 3)
        k23 = f.random(rng, 3)
        z = f.zero()
        km = [[z, k12, k13], [-k12, z, k23], [-k13, -k23, z]]
        s = [[km[i][j] / a.gamma[i] for j in range(3)] for i in range(3)]
        m_plus = [[ident[i][j] + s[i][j] for j in range(3)] for i in range(3)]
        if linalg.det(m_plus).is_zero():
            continue
        m_minus = [[ident[i][j] - s[i][j] for j in range(3)] for i in range(3)]
        x = linalg.mat_mul(m_minus, linalg.inverse(m_plus))
        _check_gamma_orthogonal(a, x)
        return x
    raise SingularCayley(f"no invertible I + S in {retries} draws")


def _check_gamma_orthogonal(a: AlbertAlgebra, x):
    gm = gamma_matrix(a)
    lhs = linalg.mat_mul(linalg.mat_mul(linalg.transpose(x), gm), x)
    if not linalg.mat_eq(lhs, gm):
        raise NotGammaOrthogonal("X^T Gamma X != Gamma")
    if linalg.det(x) != a.field.one():
        raise NotGammaOrthogonal("det X != 1")


class Automorphism:
    """A 27x27 matrix acting on AlbertElements in canonical coordinates."""

    def __init__(self, algebra: AlbertAlgebra, matrix):
        self.algebra = algebra
        self.matrix = matrix

    def apply(self, x: AlbertElement) -> AlbertElement:
        if x.algebra != self.algebra:
            raise AlgebraMismatch("element from a different algebra")
        return AlbertElement(self.algebra, linalg.mat_vec(self.matrix, list(x.coords)))

    def __call__(self, x: AlbertElement) -> AlbertElement:
        return self.apply(x)

    def is_identity(self) -> bool:
        return linalg.mat_eq(self.matrix, linalg.identity(self.algebra.field, DIM))

    def preserves_jordan_on_basis(self) -> bool:
        """Exact check phi(b_i b_j) = phi(b_i) phi(b_j) on all 378 basis pairs."""
        a = self.algebra
        images = [self.apply(a.basis(i)) for i in range(DIM)]
        for i in range(DIM):
            for j in range(i, DIM):
                lhs = self.apply(jordan_mul(a.basis(i), a.basis(j)))
                if lhs != jordan_mul(images[i], images[j]):
                    return False
        return True


def phi(a: AlbertAlgebra, x) -> Automorphism:
    """The automorphism theta -> X theta X^(-1) for X in SO(Gamma).

    X has scalar entries, so X^(-1) = Gamma^(-1) X^T Gamma exactly and every
    triple product below associates.  The result is verified to fix the unit,
    preserve Q and the Jordan product on seeded samples; the complete
    378-pair basis check is available as preserves_jordan_on_basis().
    """
    x = [[a.field.element(v) for v in row] for row in x]
    _check_gamma_orthogonal(a, x)
    gm = gamma_matrix(a)
    g_inv = [[gm[i][j].inv() if i == j else gm[i][j] for j in range(3)] for i in range(3)]
    x_inv = linalg.mat_mul(linalg.mat_mul(g_inv, linalg.transpose(x)), gm)
    cols = []
    for idx in range(DIM):
        m = to_matrix(a.basis(idx))
        m1 = _scalar_matmul_left(x, m)
        m2 = _scalar_matmul_right(m1, x_inv)
        cols.append(from_matrix(a, m2, check=True).coords)
    matrix = [[cols[c][r] for c in range(DIM)] for r in range(DIM)]
    out = Automorphism(a, matrix)
    if out.apply(a.unit()) != a.unit():
        raise InternalCheckFailed("conjugation does not fix the unit")
    rng = _random.Random(947)
    for _ in range(5):
        p = a.random(rng, 2)
        q = a.random(rng, 2)
        if out.apply(jordan_mul(p, q)) != jordan_mul(out.apply(p), out.apply(q)):
            raise InternalCheckFailed("conjugation is not multiplicative")
        if norm_Q(out.apply(p)) != norm_Q(p):
            raise InternalCheckFailed("conjugation does not preserve Q")
    return out


def _scalar_matmul_left(x, m):
    out = []
    for i in range(3):
        row = []
        for k in range(3):
            acc = m[0][k].scale(x[i][0])
            for j in (1, 2):
                acc = acc + m[j][k].scale(x[i][j])
            row.append(acc)
        out.append(row)
    return out


def _scalar_matmul_right(m, x):
    out = []
    for i in range(3):
        row = []
        for k in range(3):
            acc = m[i][0].scale(x[0][k])
            for j in (1, 2):
                acc = acc + m[i][j].scale(x[j][k])
            row.append(acc)
        out.append(row)
    return out


def conjugation_between(src: AlbertAlgebra, dst: AlbertAlgebra, x, samples: int = 8, rng=None):
    """The isomorphism theta -> X theta X^(-1) from H(C;Gamma) to H(C;Gamma')
    induced by a scalar matrix X with X^T Gamma' X proportional to Gamma.

    Returns the 27x27 coordinate matrix.  Structural hermitianness of every
    image is checked exactly; multiplicativity is verified on sampled pairs.
    """
    if src.octonions != dst.octonions:
        raise AlgebraMismatch("conjugation needs a common coordinate algebra")
    x = [[src.field.element(v) for v in row] for row in x]
    x_inv = linalg.inverse(x)
    cols = []
    for idx in range(DIM):
        m = to_matrix(src.basis(idx))
        m2 = _scalar_matmul_right(_scalar_matmul_left(x, m), x_inv)
        cols.append(from_matrix(dst, m2, check=True).coords)
    matrix = [[cols[c][r] for c in range(DIM)] for r in range(DIM)]

    def mapped(elem: AlbertElement) -> AlbertElement:
        return AlbertElement(dst, linalg.mat_vec(matrix, list(elem.coords)))

    if rng is not None:
        for _ in range(samples):
            p = src.random(rng, 3)
            q = src.random(rng, 3)
            if mapped(jordan_mul(p, q)) != jordan_mul(mapped(p), mapped(q)):
                raise InternalCheckFailed("conjugation is not multiplicative")
    if mapped(src.unit()) != dst.unit():
        raise InternalCheckFailed("conjugation does not map unit to unit")
    return matrix


def base_change_albert(a: AlbertAlgebra, ext: Field) -> AlbertAlgebra:
    """H(C (x) L; Gamma) over a supported extension L."""
    c_ext = base_change_comp(a.octonions, ext)
    gamma = [ext.element(g.value) if ext != a.field else g for g in a.gamma]
    return AlbertAlgebra(c_ext, gamma)


def albert_from_json(obj: dict) -> AlbertAlgebra:
    from .composition import comp_from_json

    if not isinstance(obj, dict) or "octonion" not in obj or "gamma" not in obj:
        raise InvalidInput(f"bad Albert-algebra descriptor: {obj!r}")
    comp = comp_from_json(obj["octonion"])
    gamma = [comp.field.element(g) for g in obj["gamma"]]
    return AlbertAlgebra(comp, gamma)
