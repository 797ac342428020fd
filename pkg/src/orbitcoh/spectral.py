"""Pages of the Leray spectral sequence of a Borel fibration X -> X_G -> B_Z2.

With constant coefficients ``E_2 = Z2[t] (x) H*(X)`` and every later page is
a subquotient ``Z_r / B_r`` of ``E_2`` computed bigrade by bigrade.  Since
``Z_r`` is a subalgebra of ``E_2`` and ``B_r`` an ideal in it, products on
``E_r`` are products of representatives taken in ``E_2``; this is checked
every time a product is formed.

A differential is specified on the multiplicative generators of a page and
extended by the Leibniz rule.  Extension solves, in each source bigrade, for
the unique linear map compatible with every product ``g * b`` (``g`` a
generator, ``b`` a basis class); a linear relation among those products with
a nonzero image is reported as :class:`IllDefined`.

Everything lives in a finite window ``0 <= k <= kmax``, ``0 <= l <= lmax``
where ``lmax`` is the top degree of the fibre.  Differentials whose target
falls beyond ``kmax`` are treated as zero, so classes with ``k`` close to
``kmax`` may survive spuriously; callers read results only at ``k <= kmax -
lmax - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    IllDefined,
    InvalidParam,
    NotContained,
    NotSquareZero,
    UnsupportedFiber,
    UnsupportedInstance,
    WindowTooSmall,
)
from .f2_linear import BitMatrix, Quotient, Subspace, bits, kernel, quotient_basis
from .graded_rings import Presentation, compute_basis

Bigrade = tuple[int, int]

__all__ = [
    "Window",
    "FiberAlgebra",
    "Generator",
    "Page",
    "DifferentialAssignment",
    "FullDifferential",
    "build_E2",
    "extend_leibniz",
    "turn_page",
    "is_stable",
    "total_dims",
    "enumerate_assignments",
    "branchable_generators",
]


@dataclass(frozen=True)
class Window:
    kmax: int
    lmax: int

    def __post_init__(self) -> None:
        if self.lmax < 0:
            raise InvalidParam("lmax must be non-negative")
        if self.kmax < 2 * (self.lmax + 1):
            raise InvalidParam(f"kmax={self.kmax} is below 2*(lmax+1)={2 * (self.lmax + 1)}")

    @classmethod
    def default(cls, lmax: int) -> Window:
        return cls(2 * (lmax + 1) + 2, lmax)

    def contains(self, k: int, l: int) -> bool:
        return 0 <= k <= self.kmax and 0 <= l <= self.lmax

    @property
    def reliable_degree(self) -> int:
        """Largest total degree unaffected by truncation at ``kmax``."""
        return self.kmax - self.lmax - 1


class FiberAlgebra:
    """``H*(X)`` with a certified top degree and a cached multiplication table."""

    def __init__(self, presentation: Presentation, assume_trivial_action: bool = False):
        self.presentation = presentation
        g = max(presentation.gen_degrees, default=1)
        wide = compute_basis(presentation.with_cap(presentation.degree_cap + g))
        dims = wide.dims()
        top = max(d for d in range(presentation.degree_cap + 1) if dims[d])
        if any(dims[top + 1 : top + g + 1]):
            raise UnsupportedFiber(
                f"cannot certify that {presentation} vanishes above degree {top}; raise the cap"
            )
        if max(dims) > 1 and not assume_trivial_action:
            raise UnsupportedFiber(
                "fibre has a degree of dimension > 1, so the pi_1-action on it could be "
                "nontrivial; pass assume_trivial_action=True to assert it is trivial"
            )
        self.ring = wide
        self.top = top
        self.dims = tuple(dims[: top + 1])
        self._table: dict[tuple[int, int, int, int], int] = {}

    def mul(self, l1: int, a: int, l2: int, b: int) -> int:
        """Product of two bit vectors over the monomial bases in degrees ``l1``, ``l2``."""
        l = l1 + l2
        if l > self.top or not a or not b:
            return 0
        acc = 0
        for i in bits(a):
            for j in bits(b):
                key = (l1, i, l2, j)
                val = self._table.get(key)
                if val is None:
                    mono = tuple(x + y for x, y in zip(self.ring.basis[l1][i], self.ring.basis[l2][j]))
                    val = self.ring.to_vector(l, [mono])
                    self._table[key] = val
                acc ^= val
        return acc

    def monomial_label(self, l: int, i: int) -> str:
        return self.presentation.format_monomial(self.ring.basis[l][i])


def _t_power(k: int) -> str:
    return "1" if k == 0 else ("t" if k == 1 else f"t^{k}")


@dataclass(frozen=True)
class Generator:
    bigrade: Bigrade
    coords: int
    label: str


class Page:
    """The page ``E_r`` inside a window.

    ``quotients[(k, l)]`` holds ``Z_r / B_r`` at that bigrade with ``Z_r`` and
    ``B_r`` as subspaces of ``E_2^{k,l}``, itself identified with
    ``H^l(X)`` through its monomial basis.
    """

    def __init__(self, r: int, window: Window, fiber: FiberAlgebra, quotients: dict[Bigrade, Quotient]):
        self.r = r
        self.window = window
        self.fiber = fiber
        self.quotients = quotients

    def advanced(self) -> Page:
        """The next page when ``d_r`` vanishes identically."""
        return Page(self.r + 1, self.window, self.fiber, self.quotients)

    def dim(self, k: int, l: int) -> int:
        q = self.quotients.get((k, l))
        return q.dim if q is not None else 0

    def dims(self) -> dict[Bigrade, int]:
        return {b: q.dim for b, q in self.quotients.items() if q.dim}

    def bigrades(self) -> list[Bigrade]:
        """Nonzero bigrades ordered by ``(l, k)``."""
        return sorted((b for b, q in self.quotients.items() if q.dim), key=lambda b: (b[1], b[0]))

    def lift(self, k: int, l: int, c: int) -> int:
        return self.quotients[(k, l)].lift(c) if c else 0

    def coords(self, k: int, l: int, vec: int) -> int:
        if not vec:
            return 0
        return self.quotients[(k, l)].coords(vec)

    def product(self, b1: Bigrade, c1: int, b2: Bigrade, c2: int) -> int:
        """Product of two classes given by coordinates; zero outside the window."""
        if not c1 or not c2:
            return 0
        k, l = b1[0] + b2[0], b1[1] + b2[1]
        if l > self.fiber.top or k > self.window.kmax:
            return 0
        q = self.quotients.get((k, l))
        if q is None:
            return 0
        vec = self.fiber.mul(b1[1], self.lift(*b1, c1), b2[1], self.lift(*b2, c2))
        try:
            return q.coords(vec)
        except NotContained:
            raise UnsupportedInstance(
                f"product of representatives at {b1} and {b2} is not a cycle on page {self.r}"
            ) from None

    # -- labels --------------------------------------------------------------

    def vector_label(self, k: int, l: int, vec: int) -> str:
        if not vec:
            return "0"
        tk = _t_power(k)
        terms = [f"{tk}⊗{self.fiber.monomial_label(l, i)}" for i in bits(vec)]
        return " + ".join(terms)

    def class_label(self, k: int, l: int, c: int) -> str:
        if not c:
            return "0"
        text = self.vector_label(k, l, self.lift(k, l, c))
        return text if self.r == 2 else f"[{text}]"

    def basis_labels(self, k: int, l: int) -> list[str]:
        return [self.class_label(k, l, 1 << i) for i in range(self.dim(k, l))]

    # -- multiplicative structure -------------------------------------------

    @cached_property
    def generators(self) -> tuple[Generator, ...]:
        """A minimal set of algebra generators of the page within the window."""
        gens: list[Generator] = []
        order = sorted(self.bigrades(), key=lambda b: (b[0] + b[1], b[0]))
        for k, l in order:
            if (k, l) == (0, 0):
                continue
            s = self.dim(k, l)
            decomposables = []
            for g in gens:
                ck, cl = k - g.bigrade[0], l - g.bigrade[1]
                if ck < 0 or cl < 0:
                    continue
                for i in range(self.dim(ck, cl)):
                    decomposables.append(self.product(g.bigrade, g.coords, (ck, cl), 1 << i))
            dec = Subspace.span(decomposables, s)
            for c in quotient_basis(dec, Subspace.full(s)):
                gens.append(Generator((k, l), c, self.class_label(k, l, c)))
        return tuple(gens)

    def target(self, b: Bigrade, r: int | None = None) -> Bigrade:
        r = self.r if r is None else r
        return (b[0] + r, b[1] - r + 1)

    def __repr__(self) -> str:
        return f"<Page E_{self.r} window={self.window} nonzero={len(self.dims())}>"


def build_E2(
    fiber: Presentation,
    window: Window | None = None,
    assume_trivial_action: bool = False,
) -> Page:
    """``E_2^{k,l} = H^k(B_Z2) (x) H^l(X)`` with basis ``t^k (x) m``."""
    alg = FiberAlgebra(fiber, assume_trivial_action)
    if window is None:
        window = Window.default(alg.top)
    elif window.lmax != alg.top:
        raise InvalidParam(f"window lmax={window.lmax} differs from fibre top degree {alg.top}")
    quotients = {}
    for l in range(alg.top + 1):
        n = alg.dims[l]
        if not n:
            continue
        q = Quotient(Subspace.zero(n), Subspace.full(n))
        for k in range(window.kmax + 1):
            quotients[(k, l)] = q
    return Page(2, window, alg, quotients)


@dataclass(frozen=True)
class DifferentialAssignment:
    """Images of ``page.generators`` under ``d_r``, as coordinates in the target."""

    r: int
    images: tuple[int, ...]

    @classmethod
    def zero(cls, page: Page) -> DifferentialAssignment:
        return cls(page.r, (0,) * len(page.generators))

    def is_zero(self) -> bool:
        return not any(self.images)

    def describe(self, page: Page) -> list[tuple[str, str]]:
        out = []
        for g, img in zip(page.generators, self.images):
            if branchable(page, g) or img:
                tk, tl = page.target(g.bigrade)
                out.append((g.label, page.class_label(tk, tl, img)))
        return out


@dataclass(frozen=True)
class FullDifferential:
    r: int
    matrices: dict[Bigrade, BitMatrix]

    def apply(self, b: Bigrade, c: int) -> int:
        mat = self.matrices.get(b)
        return mat.apply(c) if mat is not None else 0

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.matrices.values())

    def squares_to_zero(self) -> bool:
        for (k, l), mat in self.matrices.items():
            nxt = self.matrices.get((k + self.r, l - self.r + 1))
            if nxt is not None and not (nxt @ mat).is_zero():
                return False
        return True


def branchable(page: Page, g: Generator) -> bool:
    tk, tl = page.target(g.bigrade)
    return page.window.contains(tk, tl) and page.dim(tk, tl) > 0


def branchable_generators(page: Page) -> list[int]:
    return [i for i, g in enumerate(page.generators) if branchable(page, g)]


def enumerate_assignments(page: Page) -> list[DifferentialAssignment]:
    """Every bidegree-correct choice of images for the generators, zero first.

    Generators whose target is zero by bidegree are fixed at zero.
    """
    gens = page.generators
    choices = []
    for g in gens:
        if branchable(page, g):
            choices.append(range(1 << page.dim(*page.target(g.bigrade))))
        else:
            choices.append(range(1))
    out = [DifferentialAssignment(page.r, ())]
    for ch in choices:
        out = [DifferentialAssignment(page.r, a.images + (c,)) for a in out for c in ch]
    return out


def _solve_bigrade(rows: list[tuple[int, int, str]], s: int, tdim: int, where: str) -> list[int]:
    """Find the linear map sending each ``M`` to ``N`` for rows ``(M, N, label)``.

    Rows are (source coordinates, proposed image, description).  The map is
    well defined iff every relation among the sources kills the images.
    """
    mask = (1 << s) - 1
    tag_shift = s + tdim
    pivots: dict[int, int] = {}
    for idx, (mv, nv, _) in enumerate(rows):
        x = mv | (nv << s) | (1 << (tag_shift + idx))
        y = x & mask
        while y:
            low = y & -y
            row = pivots.get(low)
            if row is None:
                break
            x ^= row
            y = x & mask & ~((low << 1) - 1)
        if x & mask:
            pivots[x & -x] = x
            continue
        image = (x >> s) & ((1 << tdim) - 1)
        if image:
            combo = [rows[i][2] for i in bits(x >> tag_shift)]
            raise IllDefined(
                f"{' + '.join(combo)} = 0 in {where}, but the Leibniz rule gives it a nonzero image",
            )
    if len(pivots) != s:
        raise UnsupportedInstance(f"generators do not span {where}")
    columns = []
    for i in range(s):
        z = 1 << i
        acc = 0
        while z:
            row = pivots[z & -z]
            acc ^= row
            z = (z ^ row) & mask
        columns.append((acc >> s) & ((1 << tdim) - 1))
    return columns


def extend_leibniz(
    page: Page, assign: DifferentialAssignment, check_square_zero: bool = True
) -> FullDifferential:
    """Extend generator images to a derivation ``d_r`` on the whole window.

    Raises :class:`IllDefined` when a product that vanishes on the page would
    get a nonzero image, and :class:`NotSquareZero` when ``d_r o d_r != 0``.
    """
    r = page.r
    W = page.window
    gens = page.generators
    if assign.r != r or len(assign.images) != len(gens):
        raise InvalidParam("assignment does not belong to this page")
    for g, img in zip(gens, assign.images):
        tk, tl = page.target(g.bigrade)
        if img and (not W.contains(tk, tl) or img >> page.dim(tk, tl)):
            raise InvalidParam(f"image of {g.label} is not an element of E_{r}^{tk},{tl}")

    at: dict[Bigrade, list[int]] = {}
    for i, g in enumerate(gens):
        at.setdefault(g.bigrade, []).append(i)

    cols: dict[Bigrade, list[int]] = {}

    def d_of(b: Bigrade, c: int) -> int:
        if not c:
            return 0
        col = cols.get(b)
        if col is None:
            return 0
        acc = 0
        for i in bits(c):
            acc ^= col[i]
        return acc

    for l in range(max(0, r - 1), W.lmax + r):
        tl = l - r + 1
        for k in range(0, W.kmax - r + 1):
            tk = k + r
            s = page.dim(k, l)
            tdim = page.dim(tk, tl)
            if not tdim:
                if s:
                    cols[(k, l)] = [0] * s
                continue
            rows: list[tuple[int, int, str]] = []
            for gi in at.get((k, l), ()):
                rows.append((gens[gi].coords, assign.images[gi], gens[gi].label))
            for gi, g in enumerate(gens):
                ck, cl = k - g.bigrade[0], l - g.bigrade[1]
                if ck < 0 or cl < 0 or (ck, cl) == (0, 0) or cl > W.lmax:
                    continue
                gt = page.target(g.bigrade)
                for i in range(page.dim(ck, cl)):
                    b = 1 << i
                    mv = page.product(g.bigrade, g.coords, (ck, cl), b)
                    nv = page.product(gt, assign.images[gi], (ck, cl), b) ^ page.product(
                        g.bigrade, g.coords, page.target((ck, cl)), d_of((ck, cl), b)
                    )
                    if mv or nv:
                        rows.append((mv, nv, f"{g.label}·{page.class_label(ck, cl, b)}"))
            if s == 0 and not any(nv for _, nv, _ in rows):
                continue
            where = f"E_{r}^{{{k},{l}}}"
            cols[(k, l)] = _solve_bigrade(rows, s, tdim, where)

    matrices = {
        b: BitMatrix.from_columns(col, page.dim(*page.target(b)))
        for b, col in cols.items()
        if page.dim(*b) and page.dim(*page.target(b))
    }
    d = FullDifferential(r, matrices)
    if check_square_zero:
        for (k, l), mat in sorted(matrices.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            t = page.target((k, l))
            nxt = matrices.get(t)
            if nxt is None:
                continue
            for i in range(mat.ncols):
                img = mat.apply(1 << i)
                img2 = nxt.apply(img)
                if img2:
                    tt = page.target(t)
                    raise NotSquareZero(
                        f"d_{r}(d_{r}({page.class_label(k, l, 1 << i)})) = "
                        f"d_{r}({page.class_label(*t, img)}) = {page.class_label(*tt, img2)} ≠ 0",
                        (k, l),
                    )
    return d


def turn_page(page: Page, d: FullDifferential) -> Page:
    """``E_{r+1} = ker d_r / im d_r`` at every bigrade."""
    if d.r != page.r:
        raise InvalidParam("differential belongs to a different page")
    if d.is_zero():
        return page.advanced()
    r = page.r
    new: dict[Bigrade, Quotient] = {}
    for (k, l), q in page.quotients.items():
        cycles, bounds = q.inside, q.sub
        out = d.matrices.get((k, l))
        if out is not None and q.dim:
            lifts = [q.lift(v) for v in kernel(out).basis]
            cycles = Subspace.span(bounds.basis + tuple(lifts), cycles.ambient_dim)
        inc = d.matrices.get((k - r, l + r - 1))
        if inc is not None:
            images = [q.lift(c) for c in inc.columns()]
            bounds = Subspace.span(bounds.basis + tuple(images), bounds.ambient_dim)
        if (cycles, bounds) == (q.inside, q.sub):
            new[(k, l)] = q
            continue
        try:
            new[(k, l)] = Quotient(bounds, cycles)
        except NotContained:
            raise NotSquareZero(f"image of d_{r} is not inside its kernel at {(k, l)}", (k, l)) from None
    return Page(r + 1, page.window, page.fiber, new)


def is_stable(page: Page) -> bool:
    """True when no later differential can be nonzero for bidegree reasons."""
    W = page.window
    nonzero = page.bigrades()
    for r in range(page.r, W.lmax + 2):
        for k, l in nonzero:
            tk, tl = k + r, l - r + 1
            if W.contains(tk, tl) and page.dim(tk, tl):
                return False
    return True


def total_dims(einf: Page, jmax: int) -> list[int]:
    """``dim H^j = sum_k dim E^{k, j-k}`` for ``0 <= j <= jmax``."""
    W = einf.window
    if jmax > W.kmax:
        raise WindowTooSmall(f"total degree {jmax} reaches beyond kmax={W.kmax}")
    out = []
    for j in range(jmax + 1):
        out.append(sum(einf.dim(k, j - k) for k in range(max(0, j - W.lmax), j + 1)))
    return out


def iter_pages_zero(page: Page) -> Iterator[Page]:
    """Pages obtained by letting every differential vanish until stability."""
    yield page
    while not is_stable(page):
        page = page.advanced()
        yield page
