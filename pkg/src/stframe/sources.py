"""Constructors for curvature tensors: Lie groups, products, space forms,
seeded random tensors, JSON ingestion and the worked-example gallery."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    JacobiViolation,
    ParseError,
    UnknownGalleryName,
    ValidationError,
)
from .tensor import (
    DIM,
    Curvature4,
    make_curvature,
    project_to_curvature,
)


@dataclass(frozen=True)
class LieAlgebra4:
    """Structure constants of a 4D metric Lie algebra: [e_i, e_j] = sum_k c_ijk e_k
    for an orthonormal basis."""

    c: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(self.c, dtype=float)
        if c.shape != (DIM,) * 3 or not np.all(np.isfinite(c)):
            raise JacobiViolation("structure constants must be a finite 4x4x4 array")
        scale = max(1.0, float(np.abs(c).max()))
        anti = np.abs(c + c.transpose(1, 0, 2)).max()
        if anti > 1e-10 * scale:
            raise JacobiViolation(f"c_ijk != -c_jik: worst residual {anti:.3e}")
        jac = (
            np.einsum("ijm,mkl->ijkl", c, c)
            + np.einsum("jkm,mil->ijkl", c, c)
            + np.einsum("kim,mjl->ijkl", c, c)
        )
        worst = np.abs(jac).max()
        if worst > 1e-10 * scale * scale:
            raise JacobiViolation(f"Jacobi identity fails: worst residual {worst:.3e}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)


@dataclass(frozen=True)
class Connection4:
    """Levi-Civita connection coefficients Gamma_ijk = <nabla_{e_i} e_j, e_k>."""

    gamma: np.ndarray

    def __post_init__(self):
        g = np.ascontiguousarray(self.gamma, dtype=float)
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)


def lie_group_curvature(g: LieAlgebra4) -> tuple[Connection4, Curvature4]:
    """Connection and curvature of the left-invariant metric with orthonormal frame.

    Koszul formula Gamma_ijk = (c_ijk - c_jki + c_kij)/2, then
    R_ijkl = sum_m (Gamma_jkm Gamma_iml - Gamma_ikm Gamma_jml - c_ijm Gamma_mkl).
    """
    c = g.c
    gamma = 0.5 * (c - c.transpose(2, 0, 1) + c.transpose(1, 2, 0))
    R = (
        np.einsum("jkm,iml->ijkl", gamma, gamma)
        - np.einsum("ikm,jml->ijkl", gamma, gamma)
        - np.einsum("ijm,mkl->ijkl", c, gamma)
    )
    return Connection4(gamma), make_curvature(R)


def _fill_plane(comp: np.ndarray, i: int, j: int, value: float) -> None:
    """Set R_ijij = value together with its symmetry orbit (0-based indices)."""
    comp[i, j, i, j] = value
    comp[j, i, j, i] = value
    comp[i, j, j, i] = -value
    comp[j, i, i, j] = -value


def surface_product(c1: float, c2: float) -> Curvature4:
    """Product of surfaces with Gaussian curvatures c1 (plane e1,e2) and c2 (plane e3,e4)."""
    comp = np.zeros((DIM,) * 4)
    _fill_plane(comp, 0, 1, -c1)
    _fill_plane(comp, 2, 3, -c2)
    return make_curvature(comp)


def space_form_product(c: float) -> Curvature4:
    """Product of a 3D space of constant sectional curvature c and a real line."""
    comp = np.zeros((DIM,) * 4)
    for i in range(3):
        for j in range(i + 1, 3):
            _fill_plane(comp, i, j, -c)
    return make_curvature(comp)


def constant_curvature(c: float) -> Curvature4:
    """Space form: R_ijkl = c (delta_il delta_jk - delta_ik delta_jl)."""
    eye = np.eye(DIM)
    comp = c * (np.einsum("il,jk->ijkl", eye, eye) - np.einsum("ik,jl->ijkl", eye, eye))
    return make_curvature(comp)


def random_curvature(seed: int) -> Curvature4:
    """Deterministic random algebraic curvature tensor (projection of iid uniform[-1,1])."""
    rng = np.random.default_rng(seed)
    return project_to_curvature(rng.uniform(-1.0, 1.0, size=(DIM,) * 4))


# --- gallery -----------------------------------------------------------------

def _solvable_lie_algebra(brackets: dict[tuple[int, int], dict[int, float]]) -> LieAlgebra4:
    c = np.zeros((DIM,) * 3)
    for (i, j), terms in brackets.items():
        for k, v in terms.items():
            c[i - 1, j - 1, k - 1] = v
            c[j - 1, i - 1, k - 1] = -v
    return LieAlgebra4(c)


def example_s2_1_algebra() -> LieAlgebra4:
    """Solvable group with [e1,e2]=2e2, [e1,e3]=-e3, [e1,e4]=2e3-e4."""
    return _solvable_lie_algebra(
        {(1, 2): {2: 2.0}, (1, 3): {3: -1.0}, (1, 4): {3: 2.0, 4: -1.0}}
    )


def example4_algebra(a: float, b: float) -> LieAlgebra4:
    """Solvable group with [e1,e2]=a e2, [e1,e3]=-a e3 - b e4, [e1,e4]=b e3 - a e4."""
    return _solvable_lie_algebra(
        {(1, 2): {2: a}, (1, 3): {3: -a, 4: -b}, (1, 4): {3: b, 4: -a}}
    )


GALLERY_NAMES = (
    "example-s2-1",
    "example-products",
    "example-spaceform",
    "example-pm-c",
    "example4",
    "example6",
)


def gallery(name: str, **params: float) -> tuple[Curvature4, dict]:
    """Gallery tensor plus stored expectations (eigenvalues, verdicts, cases, volume).

    Eigenvalue expectations are listed in descending order to match the
    eigensolver output.
    """
    if name == "example-s2-1":
        _, R = lie_group_curvature(example_s2_1_algebra())
        meta = {
            "name": name,
            "eigenvalues": [2.0, 0.0, -2.0, -8.0],
            "weakly_einstein": False,
            "einstein": False,
        }
        return R, meta
    if name == "example-products":
        c1 = float(params.get("c1", 1.0))
        c2 = float(params.get("c2", 1.0))
        eig = sorted([c1, c1, c2, c2], reverse=True)
        meta = {
            "name": name,
            "c1": c1,
            "c2": c2,
            "eigenvalues": eig,
            "weakly_einstein": c1 * c1 == c2 * c2,
            "einstein": c1 == c2,
        }
        return surface_product(c1, c2), meta
    if name == "example-spaceform":
        c = float(params.get("c", 1.0))
        meta = {
            "name": name,
            "c": c,
            "eigenvalues": sorted([2 * c, 2 * c, 2 * c, 0.0], reverse=True),
            "weakly_einstein": c == 0.0,
            "einstein": c == 0.0,
            "forbidden_pattern": None if c == 0.0 else (1 if c > 0 else 4),
        }
        return space_form_product(c), meta
    if name == "example-pm-c":
        c = float(params.get("c", 1.0))
        meta = {
            "name": name,
            "c": c,
            "eigenvalues": sorted([c, c, -c, -c], reverse=True),
            "weakly_einstein": True,
            "einstein": c == 0.0,
            "cases": ["ii", "vi", "vii", "viii"] if c != 0.0 else None,
            "f": -(c ** 2) if c != 0 else 0.0,
        }
        return surface_product(c, -c), meta
    if name == "example4":
        a = float(params.get("a", 1.0))
        b = float(params.get("b", 0.0))
        if a == 0.0:
            raise ValidationError("a", "example4 requires a != 0")
        _, R = lie_group_curvature(example4_algebra(a, b))
        a2 = a * a
        meta = {
            "name": name,
            "a": a,
            "b": b,
            "eigenvalues": [a2, -a2, -a2, -3 * a2],
            "weakly_einstein": True,
            "einstein": False,
            "cases": ["v"],
            "f": -2 * a2 * a2,
        }
        return R, meta
    if name == "example6":
        m = int(params.get("m", 2))
        if m < 2:
            raise ValidationError("m", "example6 requires genus m >= 2")
        # Unit sphere (K=+1) times genus-m surface (K=-1); the surface volume
        # 4*pi*(m-1) comes from the 2D Gauss-Bonnet theorem.
        volume = 4 * math.pi * 4 * math.pi * (m - 1)
        meta = {
            "name": name,
            "m": m,
            "eigenvalues": [1.0, 1.0, -1.0, -1.0],
            "weakly_einstein": True,
            "einstein": False,
            "cases": ["ii", "vi", "vii", "viii"],
            "volume": volume,
            "chi": float(4 * (1 - m)),
            "p1": 0.0,
            "C": float(8 * (1 - m)),
            "hitchin_ok": False,
            "sphere_curvature": 1.0,
            "surface_curvature": -1.0,
        }
        return surface_product(1.0, -1.0), meta
    raise UnknownGalleryName(f"unknown gallery name {name!r}; known: {GALLERY_NAMES}")


# --- JSON ingestion ----------------------------------------------------------

_KINDS = (
    "lie_group",
    "surface_product",
    "space_form_product",
    "constant_curvature",
    "raw_curvature",
    "gallery",
)


@dataclass(frozen=True)
class GeometrySpec:
    kind: str
    params: dict = field(default_factory=dict)
    volume: float | None = None


def _require_number(obj: dict, key: str) -> float:
    if key not in obj:
        raise ValidationError(key, "required field missing")
    v = obj[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
        raise ValidationError(key, "must be a finite number")
    return float(v)


def load_spec(text: str) -> GeometrySpec:
    """Parse and validate a JSON geometry document (1-based indices)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.pos, e.msg) from e
    if not isinstance(doc, dict):
        raise ValidationError("document", "must be a JSON object")
    kind = doc.get("kind")
    if kind not in _KINDS:
        raise ValidationError("kind", f"must be one of {_KINDS}")
    volume = None
    if "volume" in doc:
        volume = _require_number(doc, "volume")
        if volume <= 0:
            raise ValidationError("volume", "must be positive")

    params: dict = {}
    if kind == "lie_group":
        entries = doc.get("c")
        if not isinstance(entries, list):
            raise ValidationError("c", "must be a list of [i, j, k, value] rows")
        rows = []
        for row in entries:
            if not (isinstance(row, list) and len(row) == 4):
                raise ValidationError("c", "each row must be [i, j, k, value]")
            i, j, k, v = row
            if not all(isinstance(x, int) and 1 <= x <= 4 for x in (i, j, k)):
                raise ValidationError("c", "indices must be integers in 1..4")
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValidationError("c", "value must be a finite number")
            rows.append((i, j, k, float(v)))
        params["c"] = rows
    elif kind == "surface_product":
        params["c1"] = _require_number(doc, "c1")
        params["c2"] = _require_number(doc, "c2")
    elif kind in ("space_form_product", "constant_curvature"):
        params["c"] = _require_number(doc, "c")
    elif kind == "raw_curvature":
        entries = doc.get("components")
        if not isinstance(entries, list):
            raise ValidationError("components", "must be a list of [i, j, k, l, value]")
        rows = []
        for row in entries:
            if not (isinstance(row, list) and len(row) == 5):
                raise ValidationError("components", "each row must be [i, j, k, l, value]")
            *idx, v = row
            if not all(isinstance(x, int) and 1 <= x <= 4 for x in idx):
                raise ValidationError("components", "indices must be integers in 1..4")
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValidationError("components", "value must be a finite number")
            rows.append((*idx, float(v)))
        params["components"] = rows
        params["symmetry_closure"] = bool(doc.get("symmetry_closure", False))
    elif kind == "gallery":
        name = doc.get("name")
        if not isinstance(name, str) or name not in GALLERY_NAMES:
            raise ValidationError("name", f"must be one of {GALLERY_NAMES}")
        params["name"] = name
        for key in ("c1", "c2", "c", "a", "b", "m"):
            if key in doc:
                params[key] = _require_number(doc, key)
    return GeometrySpec(kind=kind, params=params, volume=volume)


def realize(spec: GeometrySpec) -> tuple[Curvature4, dict]:
    """Build the curvature tensor described by a GeometrySpec."""
    p = spec.params
    meta: dict = {"kind": spec.kind}
    if spec.kind == "lie_group":
        c = np.zeros((DIM,) * 3)
        for i, j, k, v in p["c"]:
            c[i - 1, j - 1, k - 1] = v
            c[j - 1, i - 1, k - 1] = -v
        _, R = lie_group_curvature(LieAlgebra4(c))
    elif spec.kind == "surface_product":
        R = surface_product(p["c1"], p["c2"])
        meta.update(c1=p["c1"], c2=p["c2"])
    elif spec.kind == "space_form_product":
        R = space_form_product(p["c"])
        meta.update(c=p["c"])
    elif spec.kind == "constant_curvature":
        R = constant_curvature(p["c"])
        meta.update(c=p["c"])
    elif spec.kind == "raw_curvature":
        comp = np.zeros((DIM,) * 4)
        for i, j, k, l, v in p["components"]:
            comp[i - 1, j - 1, k - 1, l - 1] = v
            if p["symmetry_closure"]:
                _set_orbit(comp, i - 1, j - 1, k - 1, l - 1, v)
        R = make_curvature(comp)
    elif spec.kind == "gallery":
        name = p["name"]
        kwargs = {k: v for k, v in p.items() if k != "name"}
        R, meta = gallery(name, **kwargs)
        meta = dict(meta)
        meta["kind"] = "gallery"
    else:  # pragma: no cover - guarded by load_spec
        raise ValidationError("kind", "unknown kind")
    if spec.volume is not None:
        meta["volume"] = spec.volume
    return R, meta


def _set_orbit(comp: np.ndarray, i: int, j: int, k: int, l: int, v: float) -> None:
    """Fill the full symmetry orbit of one listed component."""
    for (a, b, c, d), s in (
        ((i, j, k, l), 1.0),
        ((j, i, k, l), -1.0),
        ((i, j, l, k), -1.0),
        ((j, i, l, k), 1.0),
        ((k, l, i, j), 1.0),
        ((l, k, i, j), -1.0),
        ((k, l, j, i), -1.0),
        ((l, k, j, i), 1.0),
    ):
        comp[a, b, c, d] = s * v
