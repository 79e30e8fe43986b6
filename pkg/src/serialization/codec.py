"""
Parse and serialize algebras, extension data and reports.

Output is canonical: keys sorted, two-space indent, trailing newline,
bracket entries in (i, j, k) order with i < j and zero entries dropped.
"""

import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from src.algebra.homlie import AnyAlgebra, HomLieAlgebra, QuadraticHomLieAlgebra
from src.algebra.report import AlgebraReport
from src.algebra.tensor import BilinearTable, StructureTensor
from src.errors import ParseError
from src.extension.data import DoubleExtensionData
from src.linalg.matrix import Matrix
from src.linalg.rational import format_rational, parse_rational
from src.linalg.subspace import Subspace
from src.serialization.schema import AlgebraFile, DecompositionFile, ExtensionFile, ReportFile
from src.structure.decomposition import DecompositionData

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"

Model = TypeVar("Model", bound=BaseModel)
Location = Tuple[Union[str, int], ...]


def format_location(loc: Sequence[Union[str, int]]) -> str:
    """('bracket', 3, 1) -> 'bracket[3][1]'."""
    text = ""
    for part in loc:
        if isinstance(part, int):
            text += f"[{part}]"
        else:
            text += f".{part}" if text else str(part)
    return text


def dump(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _load(text: str, model: Type[Model]) -> Model:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("invalid_json", f"Invalid JSON: {e.msg} at line {e.lineno} column {e.colno}")
    try:
        return model.model_validate(raw)
    except ValidationError as e:
        error = e.errors()[0]
        location = format_location(error["loc"])
        if error["type"] == "extra_forbidden":
            raise ParseError("unknown_field", f"Unknown field '{location}'", location)
        raise ParseError("schema", f"{location}: {error['msg']}", location)


def _matrix(rows: List[List[str]], shape: Tuple[int, int], loc: Location) -> Matrix:
    expected_rows, expected_cols = shape
    if len(rows) != expected_rows:
        raise ParseError(
            "shape_mismatch", f"Expected {expected_rows} rows, got {len(rows)}", format_location(loc)
        )
    values = []
    for r, row in enumerate(rows):
        if len(row) != expected_cols:
            raise ParseError(
                "shape_mismatch",
                f"Expected {expected_cols} entries, got {len(row)}",
                format_location(loc + (r,)),
            )
        values.append([parse_rational(x, format_location(loc + (r, c))) for c, x in enumerate(row)])
    return Matrix.from_rows(values, cols=expected_cols)


def _tensor(entries: Sequence[Tuple[int, int, int, str]], dim: int, loc: Location) -> StructureTensor:
    seen = set()
    parsed = []
    for p, (i, j, k, value) in enumerate(entries):
        for q, index in enumerate((i, j, k)):
            if not 0 <= index < dim:
                raise ParseError(
                    "index_out_of_range",
                    f"Index {index} outside 0..{dim - 1}",
                    format_location(loc + (p, q)),
                )
        if i >= j:
            raise ParseError("bracket_order", "bracket indices must satisfy i<j", format_location(loc + (p,)))
        if (i, j, k) in seen:
            raise ParseError("duplicate_entry", f"Entry ({i}, {j}, {k}) appears twice", format_location(loc + (p,)))
        seen.add((i, j, k))
        parsed.append((i, j, k, parse_rational(value, format_location(loc + (p, 3)))))
    return StructureTensor.from_entries(dim, parsed)


def _tensor_entries(t: StructureTensor) -> List[List[Any]]:
    return [[i, j, k, format_rational(c)] for i, j, k, c in t.entries]


def _matrix_rows(m: Matrix) -> List[List[str]]:
    return [[format_rational(x) for x in row] for row in m.to_rows()]


def parse_algebra(text: str) -> AnyAlgebra:
    """Decode an algebra document; a present metric yields a quadratic algebra."""
    doc = _load(text, AlgebraFile)
    n = doc.dim
    bracket = _tensor(doc.bracket, n, ("bracket",))
    twist = _matrix(doc.twist, (n, n), ("twist",))
    labels = None
    if doc.labels is not None:
        if len(doc.labels) != n:
            raise ParseError("shape_mismatch", f"Expected {n} labels, got {len(doc.labels)}", "labels")
        labels = tuple(doc.labels)
    algebra = HomLieAlgebra(n, bracket, twist, labels)
    if doc.metric is None:
        return algebra

    gram = _matrix(doc.metric, (n, n), ("metric",))
    for r in range(n):
        for c in range(r + 1, n):
            if gram[r, c] != gram[c, r]:
                raise ParseError(
                    "non_symmetric_metric",
                    f"metric[{r}][{c}] = {format_rational(gram[r, c])} but "
                    f"metric[{c}][{r}] = {format_rational(gram[c, r])}",
                    format_location(("metric", r, c)),
                )
    return QuadraticHomLieAlgebra(algebra, gram, strict=False)


def algebra_to_dict(a: AnyAlgebra) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "dim": a.dim,
        "bracket": _tensor_entries(a.bracket),
        "twist": _matrix_rows(a.twist),
    }
    if isinstance(a, QuadraticHomLieAlgebra):
        document["metric"] = _matrix_rows(a.gram)
    if a.labels is not None:
        document["labels"] = list(a.labels)
    return document


def serialize_algebra(a: AnyAlgebra) -> str:
    return dump(algebra_to_dict(a))


def _extension(doc: ExtensionFile, loc: Location = ()) -> DoubleExtensionData:
    s, h = doc.s_dim, doc.h_dim
    for name, items in (("rho", doc.rho), ("tau", doc.tau)):
        if len(items) != s:
            raise ParseError(
                "shape_mismatch", f"Expected {s} {name} matrices, got {len(items)}", format_location(loc + (name,))
            )
    return DoubleExtensionData(
        s_dim=s,
        h_dim=h,
        bracket_s=_tensor(doc.bracket_s, s, loc + ("bracket_s",)),
        bracket_h=_tensor(doc.bracket_h, h, loc + ("bracket_h",)),
        theta=_matrix(doc.theta, (h, h), loc + ("theta",)),
        gram_h=_matrix(doc.gram_h, (h, h), loc + ("gram_h",)),
        phi=_matrix(doc.phi, (h, s), loc + ("phi",)),
        varphi=_matrix(doc.varphi, (s, s), loc + ("varphi",)),
        rho=tuple(_matrix(m, (h, h), loc + ("rho", i)) for i, m in enumerate(doc.rho)),
        tau=tuple(_matrix(m, (s, h), loc + ("tau", i)) for i, m in enumerate(doc.tau)),
        mu=_tensor(doc.mu, s, loc + ("mu",)),
    )


def parse_extension(text: str) -> DoubleExtensionData:
    """Decode an extension document; hypotheses are not checked here."""
    return _extension(_load(text, ExtensionFile))


def extension_to_dict(d: DoubleExtensionData) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "s_dim": d.s_dim,
        "h_dim": d.h_dim,
        "bracket_s": _tensor_entries(d.bracket_s),
        "bracket_h": _tensor_entries(d.bracket_h),
        "theta": _matrix_rows(d.theta),
        "gram_h": _matrix_rows(d.gram_h),
        "phi": _matrix_rows(d.phi),
        "varphi": _matrix_rows(d.varphi),
        "rho": [_matrix_rows(m) for m in d.rho],
        "tau": [_matrix_rows(m) for m in d.tau],
        "mu": _tensor_entries(d.mu),
    }


def serialize_extension(d: DoubleExtensionData) -> str:
    return dump(extension_to_dict(d))


def serialize_report(report: AlgebraReport) -> str:
    return dump(report.to_dict())


def parse_report(text: str) -> ReportFile:
    return _load(text, ReportFile)


def _table_entries(t: BilinearTable) -> List[List[Any]]:
    return [
        [i, j, k, format_rational(c)]
        for i in range(t.source_dim) for j in range(t.source_dim)
        for k, c in enumerate(t(i, j)) if c
    ]


def _table(
    entries: Sequence[Tuple[int, int, int, str]], source_dim: int, target_dim: int, loc: Location
) -> BilinearTable:
    values = [[[Fraction(0)] * target_dim for _ in range(source_dim)] for _ in range(source_dim)]
    seen = set()
    for p, (i, j, k, value) in enumerate(entries):
        for q, (index, bound) in enumerate(((i, source_dim), (j, source_dim), (k, target_dim))):
            if not 0 <= index < bound:
                raise ParseError(
                    "index_out_of_range", f"Index {index} outside 0..{bound - 1}", format_location(loc + (p, q))
                )
        if (i, j, k) in seen:
            raise ParseError("duplicate_entry", f"Entry ({i}, {j}, {k}) appears twice", format_location(loc + (p,)))
        seen.add((i, j, k))
        values[i][j][k] = parse_rational(value, format_location(loc + (p, 3)))
    return BilinearTable(source_dim, target_dim, tuple(tuple(tuple(v) for v in row) for row in values))


def _basis(rows: List[List[str]], dim: int, loc: Location) -> Subspace:
    return Subspace.span(dim, _matrix(rows, (len(rows), dim), loc).to_rows())


def decomposition_to_dict(
    d: DecompositionData, validation: Optional[AlgebraReport] = None, lie_dim: int = 0
) -> Dict[str, Any]:
    """Subspace bases, the frame and every block map of a decomposition.

    ``extension`` holds the data ``construct`` needs to rebuild the algebra
    in frame coordinates.
    """
    document: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "dim": d.frame.rows,
        "lie_dim": lie_dim,
        "s_dim": d.s_dim,
        "h_dim": d.h_dim,
        "maximal_ideal": _matrix_rows(d.maximal_ideal.basis),
        "iso_radical": _matrix_rows(d.iso_radical.basis),
        "h_space": _matrix_rows(d.h_space.basis),
        "s_space": _matrix_rows(d.s_space.basis),
        "frame": _matrix_rows(d.frame),
        "xi": _matrix_rows(d.xi),
        "sigma": [_matrix_rows(m) for m in d.sigma],
        "gamma": _table_entries(d.gamma),
        "lambda": _table_entries(d.lambda_),
        "mu": _table_entries(d.mu),
        "L": _matrix_rows(d.L),
        "extension": extension_to_dict(d.to_extension()),
    }
    if validation is not None:
        document["validation"] = validation.to_dict()
    return document


def serialize_decomposition(
    d: DecompositionData, validation: Optional[AlgebraReport] = None, lie_dim: int = 0
) -> str:
    return dump(decomposition_to_dict(d, validation, lie_dim))


def parse_decomposition(text: str) -> DecompositionData:
    """Decode a ``decompose`` document; the validation report is not kept."""
    doc = _load(text, DecompositionFile)
    n, m, h = doc.dim, doc.s_dim, doc.h_dim
    if n != 2 * m + h:
        raise ParseError("shape_mismatch", f"dim {n} is not 2*{m} + {h}", "dim")
    e = _extension(doc.extension, ("extension",))
    if (e.s_dim, e.h_dim) != (m, h):
        raise ParseError("shape_mismatch", f"Extension has s_dim={e.s_dim}, h_dim={e.h_dim}", "extension")
    if len(doc.sigma) != m:
        raise ParseError("shape_mismatch", f"Expected {m} sigma matrices, got {len(doc.sigma)}", "sigma")
    return DecompositionData(
        maximal_ideal=_basis(doc.maximal_ideal, n, ("maximal_ideal",)),
        iso_radical=_basis(doc.iso_radical, n, ("iso_radical",)),
        h_space=_basis(doc.h_space, n, ("h_space",)),
        s_space=_basis(doc.s_space, n, ("s_space",)),
        frame=_matrix(doc.frame, (n, n), ("frame",)),
        xi=_matrix(doc.xi, (m, m), ("xi",)),
        bracket_s=e.bracket_s,
        bracket_h=e.bracket_h,
        theta=e.theta,
        gram_h=e.gram_h,
        phi=e.phi,
        varphi=e.varphi,
        rho=e.rho,
        tau=e.tau,
        sigma=tuple(_matrix(s, (m, m), ("sigma", i)) for i, s in enumerate(doc.sigma)),
        gamma=_table(doc.gamma, h, m, ("gamma",)),
        lambda_=_table(doc.lambda_, m, h, ("lambda",)),
        mu=_table(doc.mu, m, m, ("mu",)),
        L=_matrix(doc.L, (m, h), ("L",)),
    )
