"""
Pydantic models for the JSON documents.

Scalars travel as "p/q" strings and are decoded by the codec, which also
checks index ranges, shapes and symmetry with a location for each error.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictBool, StrictInt, StrictStr, field_validator

RationalText = StrictStr
MatrixRows = List[List[RationalText]]
BracketEntry = Tuple[StrictInt, StrictInt, StrictInt, RationalText]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class AlgebraFile(StrictModel):
    """A Hom-Lie algebra, optionally with a metric."""

    schema_version: Literal["1"]
    dim: StrictInt = Field(ge=0)
    bracket: List[BracketEntry]
    twist: MatrixRows
    metric: Optional[MatrixRows] = None
    labels: Optional[List[StrictStr]] = None


class ExtensionFile(StrictModel):
    """Input bundle of the double extension."""

    schema_version: Literal["1"]
    s_dim: StrictInt = Field(ge=0)
    h_dim: StrictInt = Field(ge=0)
    bracket_s: List[BracketEntry]
    bracket_h: List[BracketEntry]
    theta: MatrixRows
    gram_h: MatrixRows
    phi: MatrixRows
    varphi: MatrixRows
    rho: List[MatrixRows]
    tau: List[MatrixRows]
    mu: List[BracketEntry]


class WitnessEntry(StrictModel):
    indices: List[StrictInt]
    defect: Optional[List[RationalText]] = None
    note: Optional[StrictStr] = None


class CheckEntry(StrictModel):
    passed: StrictBool
    witness: Optional[WitnessEntry] = None


class ReportFile(StrictModel):
    """Output of ``verify``, ``construct`` and the validation step of ``decompose``."""

    passed: StrictBool
    checks: Dict[str, CheckEntry]
    facts: Dict[str, Any] = Field(default_factory=dict)
    warnings: Optional[List[StrictStr]] = None

    @field_validator('checks')
    @classmethod
    def validate_witnesses(cls, v: Dict[str, CheckEntry]) -> Dict[str, CheckEntry]:
        for name, entry in v.items():
            if entry.passed == (entry.witness is not None):
                raise ValueError(f"Check '{name}' must carry a witness exactly when it fails")
        return v


TableEntry = Tuple[StrictInt, StrictInt, StrictInt, RationalText]


class DecompositionFile(StrictModel):
    """Output of ``decompose``: subspace bases, the frame and every block map.

    Bilinear maps list their nonzero values as (i, j, k, c) over all ordered
    pairs, since they need not be antisymmetric.
    """

    schema_version: Literal["1"]
    dim: StrictInt = Field(ge=0)
    lie_dim: StrictInt = Field(default=0, ge=0)
    s_dim: StrictInt = Field(ge=0)
    h_dim: StrictInt = Field(ge=0)
    maximal_ideal: MatrixRows
    iso_radical: MatrixRows
    h_space: MatrixRows
    s_space: MatrixRows
    frame: MatrixRows
    xi: MatrixRows
    sigma: List[MatrixRows]
    gamma: List[TableEntry]
    lambda_: List[TableEntry] = Field(alias="lambda")
    mu: List[TableEntry]
    L: MatrixRows
    extension: ExtensionFile
    validation: Optional[ReportFile] = None
