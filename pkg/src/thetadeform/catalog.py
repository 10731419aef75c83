"""Constructors for the concrete deformed algebras: tori, odd spheres and SU(n)."""

from __future__ import annotations

import re
import warnings
from collections.abc import Mapping
from itertools import permutations

from .algebra import AlgebraContext, Element, GeneratorSymbol, Presentation, product, twisted_product
from .errors import DimensionError, NoNontrivialDeformation, ParseError
from .hopf import MatrixQuantumGroup
from .phase import AffineForm, DeformationMatrix, make_quantum_group_matrix, parse_form

__all__ = [
    "build_nc_torus",
    "build_sphere",
    "build_su_theta",
    "build_torus_group",
    "default_matrix",
    "lookup",
    "parse_matrix",
    "su_weights",
    "thetaprime",
    "twisted_determinant",
]


def su_weights(n: int) -> list[tuple[int, ...]]:
    """Torus characters of the rows of SU(n): ``e_i`` for ``i < n`` and ``-(e_1 + ... + e_{n-1})``."""
    rank = n - 1
    out = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    out.append(tuple(-1 for _ in range(rank)))
    return out


def _sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def twisted_determinant(Q: MatrixQuantumGroup) -> Element:
    """``sum_sigma sgn(sigma) u_{1 sigma(1)} x ... x u_{n sigma(n)}`` in row order."""
    ctx = Q.context
    total = Element.zero()
    for perm in permutations(range(Q.n)):
        factors = [Q.u(i + 1, perm[i] + 1) for i in range(Q.n)]
        total = total + product(ctx, *factors) * _sign(perm)
    return total


def _coerce_matrix(value, dim: int) -> DeformationMatrix:
    if value is None:
        return DeformationMatrix.zero(dim)
    if isinstance(value, DeformationMatrix):
        matrix = value
    elif isinstance(value, (str, int, AffineForm)) or hasattr(value, "denominator"):
        matrix = parse_matrix(str(value) if not isinstance(value, AffineForm) else value, dim)
    else:
        matrix = DeformationMatrix(value)
    if matrix.dim != dim:
        raise DimensionError(f"expected a {dim}x{dim} deformation matrix, got {matrix.dim}x{matrix.dim}")
    return matrix


def build_su_theta(n: int, K=None, name: str | None = None, letter: str = "u") -> MatrixQuantumGroup:
    """The deformation SU(n)_theta with theta = K (+) (-K) on (left, right) weights.

    ``letter`` names the matrix entries (``u[i][j]`` by default).
    """
    if n < 2:
        raise DimensionError("SU(n) needs n >= 2")
    rank = n - 1
    if n < 3 and K is not None:
        nontrivial = (
            not _coerce_scalar_is_zero(K) if not isinstance(K, DeformationMatrix) else not K.is_zero()
        )
        if nontrivial:
            warnings.warn(
                "SU(2) has a one-dimensional maximal torus and admits no nontrivial deformation; using K = 0",
                NoNontrivialDeformation,
                stacklevel=2,
            )
        K = None
    K = _coerce_matrix(K, rank)
    theta = make_quantum_group_matrix(K)
    weights = su_weights(n)
    grid = tuple(
        tuple(GeneratorSymbol(letter, (i + 1, j + 1), False, weights[i] + weights[j]) for j in range(n))
        for i in range(n)
    )
    label = name or f"SU({n})"
    ctx = AlgebraContext(theta, [g for row in grid for g in row], label)
    Q = MatrixQuantumGroup(label, n, K, theta, Presentation(ctx, (), name=label), grid, n, "su")
    relations, labels = _unitarity(Q)
    relations.append(twisted_determinant(Q) - 1)
    labels.append("det")
    Q.presentation = Presentation(ctx, relations, labels, label, family="su")
    return Q


def _coerce_scalar_is_zero(value) -> bool:
    try:
        return parse_form(value).is_zero()
    except (ParseError, TypeError):
        return False


def _unitarity(Q: MatrixQuantumGroup) -> tuple[list[Element], list[str]]:
    ctx = Q.context
    n = Q.n
    relations, labels = [], []
    for j in range(1, n + 1):
        for l in range(1, n + 1):
            rows = Element.zero()
            cols = Element.zero()
            for k in range(1, n + 1):
                rows = rows + twisted_product(ctx, Q.u(j, k), Q.ustar(l, k))
                cols = cols + twisted_product(ctx, Q.ustar(k, j), Q.u(k, l))
            delta = 1 if j == l else 0
            relations += [rows - delta, cols - delta]
            labels += [f"UU*[{j},{l}]", f"U*U[{j},{l}]"]
    return relations, labels


def build_sphere(lam=None, n: int | None = None, name: str | None = None, letter: str = "z") -> Presentation:
    """Odd sphere S^{2n-1}_lambda: normal generators z_1..z_n and sum z_k z_k* = 1."""
    if n is None:
        if not isinstance(lam, DeformationMatrix):
            raise DimensionError("the sphere dimension is needed when lambda is not a matrix")
        n = lam.dim
    lam = _coerce_matrix(lam, n)
    gens = [GeneratorSymbol(letter, (j + 1,), False, tuple(int(i == j) for i in range(n))) for j in range(n)]
    label = name or f"S^{2 * n - 1}"
    ctx = AlgebraContext(lam, gens, label)
    radius = Element.zero()
    for g in gens:
        radius = radius + twisted_product(ctx, Element.generator(g), Element.generator(g.star()))
    return Presentation(ctx, [radius - 1], ["radius"], label, family="sphere")


def build_nc_torus(lam=None, n: int | None = None, name: str | None = None) -> Presentation:
    """Noncommutative n-torus: unitaries U_j of weight e_j."""
    if n is None:
        if not isinstance(lam, DeformationMatrix):
            raise DimensionError("the torus dimension is needed when lambda is not a matrix")
        n = lam.dim
    lam = _coerce_matrix(lam, n)
    gens = [GeneratorSymbol("U", (j + 1,), False, tuple(int(i == j) for i in range(n))) for j in range(n)]
    label = name or f"T^{n}"
    ctx = AlgebraContext(lam, gens, label)
    relations = [
        twisted_product(ctx, Element.generator(g), Element.generator(g.star())) - 1 for g in gens
    ]
    return Presentation(ctx, relations, [f"unitary[{j + 1}]" for j in range(n)], label, family="torus")


def build_torus_group(lam=None, n: int | None = None) -> MatrixQuantumGroup:
    """The torus as a matrix quantum group with diagonal fundamental matrix."""
    pres = build_nc_torus(lam, n)
    gens = pres.context.generators
    size = len(gens)
    grid = tuple(tuple(gens[i] if i == j else None for j in range(size)) for i in range(size))
    theta = pres.context.theta
    return MatrixQuantumGroup(pres.name, size, theta, theta, pres, grid, 1, "torus")


def thetaprime(param: str = "theta") -> DeformationMatrix:
    """The 4x4 matrix with rows (0,-t,t,0), (t,0,-t,0), (-t,t,0,0), 0."""
    t = AffineForm.param(param)
    return DeformationMatrix.from_upper(4, {(1, 2): -t, (1, 3): t, (2, 3): -t})


_UPPER = re.compile(r"^\s*(\d)(\d)\s*[:=]\s*(.+)$")


def parse_matrix(text, dim: int) -> DeformationMatrix:
    """Parse ``"0"``, a scalar form (every upper entry), or ``"12=a, 13=-b, ..."``."""
    if isinstance(text, AffineForm):
        return DeformationMatrix.from_upper(dim, {(j, k): text for j in range(1, dim + 1) for k in range(j + 1, dim + 1)})
    text = str(text).strip()
    if text == "thetaprime":
        if dim != 4:
            raise DimensionError("thetaprime is a 4x4 matrix")
        return thetaprime()
    if "=" in text or ":" in text:
        upper = {}
        for part in re.split(r"[;,]", text):
            if not part.strip():
                continue
            m = _UPPER.match(part)
            if not m:
                raise ParseError(f"bad matrix entry {part!r}; use jk=form")
            upper[(int(m[1]), int(m[2]))] = parse_form(m[3])
        return DeformationMatrix.from_upper(dim, upper)
    form = parse_form(text)
    return DeformationMatrix.from_upper(dim, {(j, k): form for j in range(1, dim + 1) for k in range(j + 1, dim + 1)})


def default_matrix(family: str, n: int) -> DeformationMatrix:
    """Symbolic defaults: theta for SU(3), lambda_jk elsewhere."""
    if family == "su":
        if n == 3:
            return DeformationMatrix.from_upper(2, {(1, 2): "theta"})
        return DeformationMatrix.symbolic(n - 1, "lambda")
    return DeformationMatrix.symbolic(n, "lambda")


def lookup(name: str, matrix=None, substitutions: Mapping | None = None):
    """Resolve ``torus:n``, ``sphere:n`` or ``su:n`` to a presentation or quantum group."""
    m = re.fullmatch(r"(torus|sphere|su):(\d+)", name.strip())
    if not m:
        raise ParseError(f"unknown algebra {name!r}; expected torus:n, sphere:n or su:n")
    family, n = m[1], int(m[2])
    dim = n - 1 if family == "su" else n
    if matrix is None:
        mat = default_matrix(family, n) if dim > 0 else DeformationMatrix.zero(0)
    elif family == "su" and n < 3:
        mat = matrix
    else:
        mat = _coerce_matrix(matrix, dim)
    if substitutions and isinstance(mat, DeformationMatrix):
        mat = mat.substitute(substitutions)
    if family == "su":
        return build_su_theta(n, mat)
    if family == "sphere":
        return build_sphere(mat, n)
    return build_nc_torus(mat, n)
