"""
Pydantic models for reports and command-line output
"""
import json
from typing import Annotated, Any, Dict, List, Literal, Optional

from pydantic import BaseModel, PlainSerializer

# JSON consumers without big integers lose precision past 2^53, so those go out as strings
BigInt = Annotated[
    int,
    PlainSerializer(lambda v: str(v) if abs(v) >= 2 ** 53 else v, return_type=Any, when_used="json"),
]
PolyPairs = List[List[int]]
CellStatus = Literal["match", "mismatch", "out-of-family"]


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class CanonicalModel(BaseModel):
    def to_json(self) -> str:
        return canonical_json(self.model_dump(mode="json", exclude_none=True))


# Verification reports
class CellResult(BaseModel):
    group: str
    params: Dict[str, int]
    expected: str
    actual: BigInt
    poly: Optional[PolyPairs] = None
    status: CellStatus
    family: Optional[str] = None
    index: Optional[int] = None
    exponent: Optional[int] = None


class GroupSummary(BaseModel):
    group: str
    clause: str
    match: int = 0
    mismatch: int = 0
    out_of_family: int = 0


class IndexMapEntry(BaseModel):
    group: str
    n: int
    value: BigInt
    family: Optional[str] = None
    index: Optional[int] = None
    exponent: Optional[int] = None


class RuntimeStats(BaseModel):
    cells: int
    elapsed_ms: int
    jobs: int


class VerificationReport(CanonicalModel):
    proposition: str
    grid: Dict[str, Any]
    summary: List[GroupSummary]
    mismatch_count: int
    out_of_family_count: int
    counterexamples: List[CellResult] = []
    out_of_family: List[CellResult] = []
    index_map: List[IndexMapEntry] = []
    notes: Dict[str, Any] = {}
    cells: Optional[List[CellResult]] = None
    runtime: Optional[RuntimeStats] = None

    @property
    def ok(self) -> bool:
        return self.mismatch_count == 0


# Exponent scan
class ScanCandidate(BaseModel):
    rank: int
    A: int
    B: int
    m: int
    s: int
    defect: int
    misses: int
    family_shift: Optional[int] = None
    fibonacci_type: bool
    vanishing: bool = False
    values_at_one: List[BigInt]


class ScanResult(CanonicalModel):
    N: int
    max_n: int
    A_range: List[int]
    B_range: List[int]
    partitions: List[List[int]]
    candidates: List[ScanCandidate]

    def top_ranked(self) -> List[ScanCandidate]:
        return [c for c in self.candidates if c.rank == 1]


# Command-line payloads
class TriangleRowOut(BaseModel):
    r: int
    coeffs: Optional[Dict[str, BigInt]] = None
    q_entries: Optional[List[PolyPairs]] = None


class TriangleOutput(CanonicalModel):
    d: int
    q: bool = False
    rows: List[TriangleRowOut]


class PathCountResult(CanonicalModel):
    steps: Literal["dyck", "gen3"]
    n: int
    m: Optional[int] = None
    s: Optional[int] = None
    policy: Optional[str] = None
    formula: Optional[BigInt] = None
    oracle: Optional[BigInt] = None
    status: Optional[CellStatus] = None


class AltSumTermOut(BaseModel):
    label: str
    column: int
    sign: int
    value: BigInt


class AltSumResult(CanonicalModel):
    d: int
    row: int
    col: int
    m: int
    s: int
    N: int
    terms: List[AltSumTermOut]
    value: BigInt


class PieceSummary(BaseModel):
    index: int
    degree: int
    dim: int
    differential_exponent: Optional[int] = None


class HomologyEntry(BaseModel):
    index: int
    rank: int


class ComplexSummary(CanonicalModel):
    M: int
    c: int
    m: int
    s: int
    N: int
    pieces: List[PieceSummary]
    euler_char: BigInt
    d_squared: Optional[bool] = None
    homology: Optional[List[HomologyEntry]] = None
    f: Optional[str] = None
    qchi: Optional[PolyPairs] = None
    qchi_at_one: Optional[BigInt] = None
    qchi_at_root: Optional[List[str]] = None


class NilpotencyResult(CanonicalModel):
    M: int
    N: int
    nilpotent: bool


# OEIS
class OeisMatch(BaseModel):
    id: str
    name: str
