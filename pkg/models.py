"""
Pydantic models for every JSON document the pipeline emits.

The command line and the HTTP server build these from the library's to_json()
dictionaries, so a malformed document fails validation before it is printed.
"""

from typing import Annotated, Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from utils import TOOL_VERSION

RationalStr = Annotated[str, Field(pattern=r'^-?\d+(/\d+)?$')]
RationalMatrix = List[List[RationalStr]]


class PolyTerm(BaseModel):
    monomial: List[str]
    coeff: RationalStr


class FormTerm(BaseModel):
    idx: List[int]
    coeff: Union[RationalStr, List[PolyTerm]]


class FormDocument(BaseModel):
    degree: int = Field(..., ge=0)
    dim: int = Field(..., ge=0)
    terms: List[FormTerm]


class NamedFormDocument(FormDocument):
    name: str
    hdelta_weight: int
    rendered: Optional[str] = None


class GradationTable(BaseModel):
    pi1: List[str]
    depth: int
    levels: Dict[str, List[str]]
    dimensions: Dict[str, int] = {}


class SlGradationTable(BaseModel):
    flag: List[int]
    dimensions: Dict[str, int]
    checked_pairs: int
    violations: int


class GradationsReport(BaseModel):
    algebra: str
    tables: List[Union[GradationTable, SlGradationTable]]


class RootsReport(BaseModel):
    algebra: str
    simple_roots: List[str]
    positive_roots: List[str]
    gram: RationalMatrix
    cartan: RationalMatrix
    maximal_root: str
    pairing: RationalMatrix
    checks: Dict[str, bool]


class InvariantSpace(BaseModel):
    degree: int = Field(..., ge=1, le=5)
    dimension: int
    expected: int
    forms: List[NamedFormDocument]


class InvariantsReport(BaseModel):
    spaces: List[InvariantSpace]


class FormsReport(BaseModel):
    generators: List[NamedFormDocument]
    five_forms: List[NamedFormDocument]


class EquationDocument(BaseModel):
    name: str
    short_name: Optional[str] = None
    degree: Optional[int] = None
    form: FormDocument
    poly: List[PolyTerm]
    expanded: Optional[str] = None
    minors: Optional[str] = None
    note: Optional[str] = None


class EquationReport(BaseModel):
    dictionary: str
    format: str
    equations: List[EquationDocument]


class ClassDocument(BaseModel):
    members: List[str]
    representative: str


class PartitionDocument(BaseModel):
    generators: List[str]
    classes: List[ClassDocument]
    representatives: List[str]
    trivial: List[str]
    unmatched: List[str] = []


class SeparationReport(BaseModel):
    pair: List[str] = Field(..., min_length=2, max_length=2)
    ranks: Dict[str, List[int]]
    verdict: str = Field(..., pattern=r'^(separated|inconclusive)$')
    witness: Optional[Dict[str, RationalStr]] = None


class ClassificationReport(BaseModel):
    partitions: List[PartitionDocument]
    tau_mismatches: List[List[str]]
    separation: SeparationReport


class SymbolReport(BaseModel):
    name: str
    expanded: str
    point: Optional[Dict[str, RationalStr]] = None
    on_hypersurface: Optional[bool] = None
    matrix: Optional[RationalMatrix] = None
    rank: Optional[int] = None
    attained: List[int] = []
    constant: Optional[bool] = None
    samples: int = 0


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class SelftestReport(BaseModel):
    passed: bool
    checks: List[CheckResult]


class OutputEnvelope(BaseModel):
    command: str
    format: str = Field('json', pattern=r'^(text|json)$')
    payload: Dict[str, Any]
    toolversion: str = TOOL_VERSION


class ErrorResponse(BaseModel):
    success: bool = False
    command: str
    kind: str = Field(..., pattern=r'^(usage|domain|certificate|internal)$')
    error: str
    invariant: Optional[str] = None
