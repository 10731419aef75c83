"""JSON interchange for presentations and coaction specs.

Rationals are written as ``"p/q"`` strings so that phases survive a round
trip exactly.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from pathlib import Path

from .algebra import AlgebraContext, Element, GeneratorSymbol, Presentation, tensor_context
from .catalog import build_su_theta, build_torus_group, lookup
from .errors import ParseError
from .hopf import MatrixQuantumGroup
from .phase import AffineForm, DeformationMatrix

__all__ = [
    "load_json",
    "matrix_from_json",
    "matrix_to_json",
    "presentation_from_json",
    "presentation_to_json",
    "quantum_group_from_json",
    "spec_from_json",
    "spec_to_json",
]

FORMAT_VERSION = 1


def matrix_to_json(theta: DeformationMatrix) -> list[list[dict]]:
    return [[entry.to_json() for entry in row] for row in theta.entries]


def matrix_from_json(data) -> DeformationMatrix:
    try:
        return DeformationMatrix([[AffineForm.from_json(e) for e in row] for row in data])
    except (TypeError, KeyError) as exc:
        raise ParseError(f"bad deformation matrix: {exc}") from exc


def _generator_to_json(g: GeneratorSymbol) -> dict:
    return {"name": g.name, "indices": list(g.indices), "weight": list(g.weight), "starred": g.starred}


def _generator_from_json(data: Mapping) -> GeneratorSymbol:
    try:
        return GeneratorSymbol(data["name"], data.get("indices", ()), data.get("starred", False), data["weight"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad generator {data!r}") from exc


def presentation_to_json(pres: Presentation) -> dict:
    ctx = pres.context
    return {
        "format": FORMAT_VERSION,
        "name": pres.name,
        "family": pres.family,
        "dimension": ctx.dim,
        "parameters": list(ctx.params),
        "generators": [_generator_to_json(g) for g in ctx.generators],
        "deformation_matrix": matrix_to_json(ctx.theta),
        "relations": [
            {"label": label, "element": rel.to_json()} for label, rel in zip(pres.labels, pres.relations)
        ],
    }


def presentation_from_json(data: Mapping) -> Presentation:
    if not isinstance(data, Mapping) or "generators" not in data or "deformation_matrix" not in data:
        raise ParseError("a presentation needs 'generators' and 'deformation_matrix'")
    theta = matrix_from_json(data["deformation_matrix"])
    if "dimension" in data and int(data["dimension"]) != theta.dim:
        raise ParseError(f"dimension {data['dimension']} does not match the {theta.dim}x{theta.dim} matrix")
    gens = [_generator_from_json(g) for g in data["generators"]]
    name = data.get("name", "")
    ctx = AlgebraContext(theta, gens, name)
    rels, labels = [], []
    for i, item in enumerate(data.get("relations", [])):
        rels.append(Element.from_json(item["element"], ctx))
        labels.append(item.get("label", f"r{i + 1}"))
    return Presentation(ctx, rels, labels, name, data.get("family", ""))


def load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


# -- coaction specs ----------------------------------------------------------------


def quantum_group_from_json(data) -> MatrixQuantumGroup:
    """``"su:3"`` or ``{"algebra": "su:3", "matrix": "theta", "letter": "u"}``."""
    if isinstance(data, str):
        data = {"algebra": data}
    name = data.get("algebra", "")
    matrix = data.get("matrix")
    if name.startswith("su:"):
        return build_su_theta(int(name[3:]), matrix, letter=data.get("letter", "u"))
    if name.startswith("torus:"):
        return build_torus_group(matrix, int(name[6:]))
    raise ParseError(f"the acting quantum group must be su:n or torus:n, not {name!r}")


def _algebra_from_json(data) -> Presentation:
    if isinstance(data, str):
        data = {"algebra": data}
    if "generators" in data:
        return presentation_from_json(data)
    found = lookup(data.get("algebra", ""), data.get("matrix"))
    return found.presentation if isinstance(found, MatrixQuantumGroup) else found


def spec_from_json(data: Mapping):
    """Build a coaction spec: ``{"name", "H", "A", "images": {label: element}}``.

    Image words refer to generators as ``[slot, label]`` with slot 0 for
    ``H`` and slot 1 for ``A``.
    """
    from .coaction import CoactionSpec

    try:
        H = quantum_group_from_json(data["H"])
        A = _algebra_from_json(data["A"])
        t = tensor_context(H.context, A.context)
        images = {label: Element.from_json(img, t) for label, img in data["images"].items()}
    except KeyError as exc:
        raise ParseError(f"coaction spec is missing {exc}") from exc
    return CoactionSpec(data.get("name", "spec"), H, A, images)


def spec_to_json(spec) -> dict:
    grid = spec.H.grid
    letter = next(g for row in grid for g in row if g is not None).name
    return {
        "name": spec.name,
        "H": {
            "algebra": f"{spec.H.family}:{spec.H.n}",
            "matrix": None
            if spec.H.K.is_zero()
            else ", ".join(f"{j}{k}={v}" for (j, k), v in spec.H.K.upper_entries().items()),
            "letter": letter,
        },
        "A": presentation_to_json(spec.A),
        "images": {g.label: img.to_json() for g, img in spec.images.items()},
    }
