"""
Sequence recognizers, the proposition verifiers, and the exponent scan.

Every verifier sweeps a parameter grid, classifies each cell with exact integer
or polynomial comparisons, and returns a VerificationReport whose JSON is stable
across runs and job counts.
"""
import time
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .background.tasks import run_cells
from .exactnum import LaurentPoly
from .pathlab import ContactPolicy, GenPathSpec, count_generalized_enum
from .qcomplex import (
    ExponentFn,
    FibonacciVariant,
    complex_degree,
    complex_indices,
    modified_euler_char,
    q_fibonacci_family,
)
from .reflection import AltSumSpec, altsum_row
from .triangles import d_pascal_row, q_binomial
from .utils.config import DEFAULT_ENUMERATION_BUDGET
from .utils.pydantic_models import (
    CellResult,
    GroupSummary,
    IndexMapEntry,
    RuntimeStats,
    ScanCandidate,
    ScanResult,
    VerificationReport,
)
from .utils.tracking import diag

MAX_PROP1_ROW = 60
MAX_PROP2_ROW = 40
MAX_PROP3_N = 12
MAX_SCAN_COEFF = 20


# Exponent functions

EXPONENT_FNS: Dict[str, Tuple[int, int]] = {
    "pentagonal_1_2": (3, -1),
    "rr_1_4": (5, -3),
    "rr_2_3": (5, -1),
}
EXPONENT_ALIASES = {"pentagonal": "pentagonal_1_2", "rr14": "rr_1_4", "rr23": "rr_2_3"}


def exponent_fn(name: str) -> ExponentFn:
    key = EXPONENT_ALIASES.get(name, name)
    if key not in EXPONENT_FNS:
        raise ValueError(f"unknown exponent function '{name}', expected one of {sorted(EXPONENT_FNS)}")
    A, B = EXPONENT_FNS[key]
    return ExponentFn(label=key, A=A, B=B)


def parse_exponent_fn(text: str) -> ExponentFn:
    """
    Accepts a named function, `zero`, `one_plus:N` or `custom:A,B`.
    """
    if text == "zero":
        return ExponentFn.zero()
    if text.startswith("one_plus:"):
        return ExponentFn.one_plus(int(text.split(":", 1)[1]))
    if text.startswith("custom:"):
        parts = text.split(":", 1)[1].split(",")
        if len(parts) != 2:
            raise ValueError(f"custom exponent function needs A,B, got '{text}'")
        return ExponentFn(label=text, A=int(parts[0]), B=int(parts[1]))
    return exponent_fn(text)


# Reference sequences

def _fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def _jacobsthal(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, b + 2 * a
    return a


REFERENCE_SEQUENCES: Dict[str, Callable[[int], int]] = {
    "fibonacci": _fibonacci,
    "jacobsthal": _jacobsthal,
    "power2": lambda n: 2 ** n,
    "power3": lambda n: 3 ** n,
    "floor3": lambda n: 3 ** n // 2,
    "ceil3": lambda n: (3 ** n + 1) // 2,
}


def reference_sequence(name: str, n: int) -> int:
    if name not in REFERENCE_SEQUENCES:
        raise ValueError(f"unknown reference sequence '{name}', expected one of {sorted(REFERENCE_SEQUENCES)}")
    if n < 0:
        raise ValueError(f"reference_sequence(): index must be non-negative, got {n}")
    return REFERENCE_SEQUENCES[name](n)


def family_index(name: str, value: int) -> Optional[int]:
    """Least k with reference_sequence(name, k) == |value|, or None."""
    target = abs(value)
    k = 0
    while True:
        term = reference_sequence(name, k)
        if term == target:
            return k
        # every family is increasing from index 2 on
        if term > target and k >= 2:
            return None
        k += 1


# Cell classification

class Clause(NamedTuple):
    label: str
    families: Tuple[str, ...] = ()
    open_ended: bool = False


ZERO = Clause("zero")
UNIT = Clause("unit")
POWER2 = Clause("power2", ("power2",))
FIBONACCI = Clause("fibonacci", ("fibonacci",))
THIRDS = Clause("power3|floor3|ceil3", ("power3", "floor3", "ceil3"), open_ended=True)
JACOBSTHAL = Clause("jacobsthal", ("jacobsthal",))

PROP1_CLAUSES: Dict[int, Clause] = {2: ZERO, 3: UNIT, 4: POWER2, 5: FIBONACCI, 6: THIRDS}
PROP2_CLAUSES: Dict[int, Dict[int, Clause]] = {
    3: {2: UNIT, 3: ZERO, 4: UNIT, 5: FIBONACCI, 6: JACOBSTHAL},
    4: {2: ZERO, 3: UNIT, 4: ZERO, 5: UNIT},
}


def classify(value: int, clause: Clause) -> Tuple[str, Optional[str], Optional[int]]:
    """(status, family, index) of one alternating sum value."""
    for family in clause.families:
        k = family_index(family, value)
        if k is not None:
            return "match", family, k
    if value == 0 or (clause.label == "unit" and abs(value) == 1):
        return "match", None, None
    return ("out-of-family" if clause.open_ended else "mismatch"), None, None


def partitions(N: int) -> List[Tuple[int, int]]:
    """All (m, s) with m + s + 2 = N, ordered by s."""
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    return [(N - 2 - s, s) for s in range(N - 1)]


def group_name(d: int, N: int, m: int, s: int) -> str:
    return f"d={d} N={N} m={m} s={s}"


# Report assembly

def _assemble(
    proposition: str,
    grid: Dict,
    cells: List[CellResult],
    clauses: Dict[str, str],
    index_map: List[IndexMapEntry],
    started: float,
    jobs: int,
    include_cells: bool,
    timings: bool,
    notes: Optional[Dict] = None,
) -> VerificationReport:
    summaries: Dict[str, GroupSummary] = {}
    for cell in cells:
        summary = summaries.get(cell.group)
        if summary is None:
            summary = summaries[cell.group] = GroupSummary(group=cell.group, clause=clauses[cell.group])
        if cell.status == "match":
            summary.match += 1
        elif cell.status == "mismatch":
            summary.mismatch += 1
        else:
            summary.out_of_family += 1
    counterexamples = [c for c in cells if c.status == "mismatch"]
    out_of_family = [c for c in cells if c.status == "out-of-family"]
    runtime = None
    if timings:
        runtime = RuntimeStats(cells=len(cells), elapsed_ms=int((time.perf_counter() - started) * 1000), jobs=jobs)
    diag(f"{proposition}: {len(cells)} cells, {len(counterexamples)} mismatches, {len(out_of_family)} out of family")
    return VerificationReport(
        proposition=proposition,
        grid=grid,
        summary=list(summaries.values()),
        mismatch_count=len(counterexamples),
        out_of_family_count=len(out_of_family),
        counterexamples=counterexamples,
        out_of_family=out_of_family,
        index_map=index_map,
        notes=notes or {},
        cells=cells if include_cells else None,
        runtime=runtime,
    )


def _central_n(d: int, row: int, col: int) -> Optional[int]:
    # d = 2 central sums live on even rows 2n; higher d on every row
    if col != 0:
        return None
    if d == 2:
        return row // 2 if row % 2 == 0 else None
    return row


def _sweep_row(d: int, r: int, Ns: Sequence[int], clause_for: Callable[[int, int, int, int], Clause]) -> List[CellResult]:
    row = d_pascal_row(d, r)
    cells = []
    for N in Ns:
        for m, s in partitions(N):
            clause = clause_for(d, N, m, s)
            group = group_name(d, N, m, s)
            for col in row.columns():
                value = altsum_row(AltSumSpec(d=d, row=r, base_col=col, m=m, s=s))
                status, family, k = classify(value, clause)
                cells.append(CellResult(
                    group=group,
                    params={"d": d, "row": r, "col": col, "m": m, "s": s, "N": N},
                    expected=clause.label,
                    actual=value,
                    status=status,
                    family=family,
                    index=k,
                ))
    return cells


def _index_entries(cells: List[CellResult]) -> List[IndexMapEntry]:
    entries = []
    for cell in cells:
        p = cell.params
        n = _central_n(p["d"], p["row"], p["col"])
        if n is not None:
            entries.append(IndexMapEntry(group=cell.group, n=n, value=cell.actual, family=cell.family, index=cell.index))
    return entries


def _prop1_clause(d: int, N: int, m: int, s: int) -> Clause:
    return PROP1_CLAUSES[N]


def _prop2_clause(d: int, N: int, m: int, s: int) -> Clause:
    clause = PROP2_CLAUSES[d][N]
    if m > 0 and s > 0:
        # only the s = 0 geometry (and its mirror m = 0) is claimed for d >= 3
        return clause._replace(open_ended=True)
    return clause


def verify_prop1(max_row: int, jobs: int = 1, include_cells: bool = False, timings: bool = False) -> VerificationReport:
    """
    Alternating sums on the Pascal triangle for N = 2..6, every row 1..max_row,
    every base column and every partition N = (m+1) + (s+1).
    """
    if not 1 <= max_row <= MAX_PROP1_ROW:
        raise ValueError(f"verify_prop1(): max_row must be in [1, {MAX_PROP1_ROW}], got {max_row}")
    started = time.perf_counter()
    Ns = list(range(2, 7))
    per_row = run_cells(lambda r: _sweep_row(2, r, Ns, _prop1_clause), range(1, max_row + 1), jobs)
    cells = [cell for row_cells in per_row for cell in row_cells]
    clauses = {group_name(2, N, m, s): PROP1_CLAUSES[N].label for N in Ns for m, s in partitions(N)}
    grid = {"d": [2], "rows": [1, max_row], "N": Ns, "columns": "all"}
    return _assemble("prop1", grid, cells, clauses, _index_entries(cells), started, jobs, include_cells, timings)


def verify_prop2(
    max_row: int,
    max_row_d4: Optional[int] = None,
    jobs: int = 1,
    include_cells: bool = False,
    timings: bool = False,
) -> VerificationReport:
    """
    Alternating sums on the 3-Pascal (N = 2..6) and 4-Pascal (N = 2..5) triangles.
    Partitions with both m and s positive extend the stated geometry; their failures
    are reported as out-of-family.
    """
    max_row_d4 = max_row if max_row_d4 is None else max_row_d4
    for value in (max_row, max_row_d4):
        if not 1 <= value <= MAX_PROP2_ROW:
            raise ValueError(f"verify_prop2(): rows must be in [1, {MAX_PROP2_ROW}], got {value}")
    started = time.perf_counter()
    work = [(3, r) for r in range(1, max_row + 1)] + [(4, r) for r in range(1, max_row_d4 + 1)]
    per_row = run_cells(lambda item: _sweep_row(item[0], item[1], sorted(PROP2_CLAUSES[item[0]]), _prop2_clause), work, jobs)
    cells = [cell for row_cells in per_row for cell in row_cells]
    clauses = {
        group_name(d, N, m, s): _prop2_clause(d, N, m, s).label
        for d, table in PROP2_CLAUSES.items() for N in table for m, s in partitions(N)
    }
    grid = {"d": [3, 4], "rows": {"3": [1, max_row], "4": [1, max_row_d4]}, "N": {"3": [2, 3, 4, 5, 6], "4": [2, 3, 4, 5]}, "columns": "all"}
    return _assemble("prop2", grid, cells, clauses, _index_entries(cells), started, jobs, include_cells, timings)


# q-level checks

def family_match(value: LaurentPoly, e: int) -> Optional[Tuple[int, int, int]]:
    """
    (k, sign, a) with value == sign * q^a * G_k for the q-Fibonacci family
    G_k = G_(k-1) + q^(k-e) G_(k-2); zero matches G_0. None if no k fits.
    """
    if value.is_zero():
        return 0, 1, 0
    target = abs(value.eval_at_one())
    k = 1
    while True:
        G = q_fibonacci_family(k, e)
        g1 = G.eval_at_one()
        if g1 == target:
            ratio = value.monomial_quotient(G)
            if ratio is not None:
                return k, ratio[0], ratio[1]
        elif g1 > target and k >= 2:
            return None
        k += 1


class Prop3Clause(NamedTuple):
    tag: str
    f: str
    m: int
    s: int
    variant: Optional[FibonacciVariant]

    @property
    def N(self) -> int:
        return self.m + self.s + 2

    @property
    def group(self) -> str:
        return f"({self.tag}) N={self.N} m={self.m} s={self.s} f={self.f}"

    @property
    def expected(self) -> str:
        if self.variant is None:
            return "0 or +-q^a"
        return f"+-q^a {self.variant.value}_k"


PROP3_CLAUSES = [
    Prop3Clause("a", "pentagonal_1_2", 1, 0, None),
    Prop3Clause("b", "rr_1_4", 3, 0, FibonacciVariant.F),
    Prop3Clause("c", "rr_2_3", 2, 1, FibonacciVariant.Fprime),
]


def _prop3_cell(item: Tuple[Prop3Clause, int]) -> CellResult:
    clause, n = item
    chi = modified_euler_char(2 * n, n, clause.m, clause.s, exponent_fn(clause.f))
    at_one = chi.eval_at_one()
    status, family, k, a = "mismatch", None, None, None
    if clause.variant is None:
        if chi.is_zero():
            status = "match"
        elif chi.is_monomial() and abs(chi.leading_coeff()) == 1:
            status, family, a = "match", "monomial", chi.min_exp
    else:
        hit = family_match(chi, 1 if clause.variant == FibonacciVariant.F else 2)
        if hit is not None:
            status, family, k, a = "match", clause.variant.value, hit[0], hit[2]
    # q = 1 must reproduce the plain alternating sum
    if at_one != altsum_row(AltSumSpec(d=2, row=2 * n, base_col=0, m=clause.m, s=clause.s)):
        status = "mismatch"
    return CellResult(
        group=clause.group,
        params={"n": n, "M": 2 * n, "c": n, "m": clause.m, "s": clause.s, "N": clause.N},
        expected=clause.expected,
        actual=at_one,
        poly=chi.to_pairs(),
        status=status,
        family=family,
        index=k,
        exponent=a,
    )


def verify_prop3(max_n: int, jobs: int = 1, include_cells: bool = False, timings: bool = False) -> VerificationReport:
    """
    Modified Euler characteristics of the central complexes M = 2n, c = n with the
    pentagonal and Rogers-Ramanujan exponents, n = 1..max_n.
    """
    if not 1 <= max_n <= MAX_PROP3_N:
        raise ValueError(f"verify_prop3(): max_n must be in [1, {MAX_PROP3_N}], got {max_n}")
    started = time.perf_counter()
    work = [(clause, n) for clause in PROP3_CLAUSES for n in range(1, max_n + 1)]
    cells = run_cells(_prop3_cell, work, jobs)
    clauses = {clause.group: clause.expected for clause in PROP3_CLAUSES}
    index_map = [
        IndexMapEntry(group=c.group, n=c.params["n"], value=c.actual, family=c.family, index=c.index, exponent=c.exponent)
        for c in cells
    ]
    grid = {"n": [1, max_n], "clauses": [[c.tag, c.f, c.m, c.s] for c in PROP3_CLAUSES]}
    return _assemble("prop3", grid, cells, clauses, index_map, started, jobs, include_cells, timings)


# Generalized paths

def verify_generalized_paths(
    max_n: int = 8,
    max_m: int = 4,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    jobs: int = 1,
    include_cells: bool = False,
    timings: bool = False,
) -> VerificationReport:
    """
    Compare the 3-Pascal central alternating sum (s = 0) with path enumeration under
    every contact policy, for n = 0..max_n and m = 1..max_m. A policy matching the whole
    grid makes the other policies' disagreements out-of-family; with no such policy
    they are mismatches.
    """
    if max_m < 1:
        raise ValueError(f"verify_generalized_paths(): max_m must be at least 1, got {max_m}")
    started = time.perf_counter()
    work = [(policy, n, m) for policy in ContactPolicy for n in range(0, max_n + 1) for m in range(1, max_m + 1)]

    def evaluate(item):
        policy, n, m = item
        expected = altsum_row(AltSumSpec(d=3, row=n, base_col=0, m=m, s=0))
        actual = count_generalized_enum(GenPathSpec(n=n, m=m, s=0, policy=policy), budget)
        return expected, actual

    results = run_cells(evaluate, work, jobs)
    matching = [
        policy.value for policy in ContactPolicy
        if all(exp == act for (p, _, _), (exp, act) in zip(work, results) if p == policy)
    ]
    cells = []
    for (policy, n, m), (expected, actual) in zip(work, results):
        if expected == actual:
            status = "match"
        else:
            status = "out-of-family" if matching else "mismatch"
        cells.append(CellResult(
            group=f"policy={policy.value}",
            params={"n": n, "m": m, "s": 0, "expected": expected},
            expected="altsum_row(d=3, row=n, col=0, m, s=0)",
            actual=actual,
            status=status,
        ))
    clauses = {f"policy={p.value}": "path count equals the 3-Pascal alternating sum" for p in ContactPolicy}
    grid = {"n": [0, max_n], "m": [1, max_m], "s": 0, "policies": [p.value for p in ContactPolicy]}
    return _assemble("generalized_paths", grid, cells, clauses, [], started, jobs, include_cells, timings,
                     notes={"matching_policies": matching})


# Exponent scan

def _complex_layout(m: int, s: int, n: int) -> List[Tuple[int, int, LaurentPoly]]:
    """(index, sign, qdim) of the central complex M = 2n, c = n."""
    M = 2 * n
    return [
        (i, -1 if i % 2 else 1, q_binomial(M, complex_degree(i, n, m, s)))
        for i in complex_indices(M, n, m, s)
    ]


def _score(A: int, B: int, m: int, s: int, layouts: List[List[Tuple[int, int, LaurentPoly]]]) -> dict:
    f = ExponentFn(A=A, B=B)
    values = []
    for layout in layouts:
        chi = LaurentPoly.zero()
        for i, sign, qdim in layout:
            term = qdim.shift(f(i))
            chi = chi + term if sign > 0 else chi - term
        values.append(chi)
    defect = sum(v.l1_norm() - abs(v.eval_at_one()) for v in values)
    misses_by_family = {e: sum(1 for v in values if family_match(v, e) is None) for e in (1, 2, 3)}
    best_e = min(misses_by_family, key=lambda e: (misses_by_family[e], e))
    return {
        "A": A,
        "B": B,
        "m": m,
        "s": s,
        "defect": defect,
        "misses": misses_by_family[best_e],
        "family_shift": best_e,
        "vanishing": all(v.is_zero() for v in values),
        "values_at_one": [v.eval_at_one() for v in values],
    }


def scan_exponents(
    N: int,
    partition: Optional[Tuple[int, int]] = None,
    A_range: Tuple[int, int] = (-10, 10),
    B_range: Tuple[int, int] = (-10, 10),
    max_n: int = 8,
    jobs: int = 1,
) -> ScanResult:
    """
    Try every integer-valued f(i) = (A i^2 + B i)/2 in the ranges on the central
    complexes n = 1..max_n and rank the candidates.

    Ranking is by total cancellation defect (sum of |coefficients| minus |value at q=1|),
    then by the number of n where the value is not +-q^a times a q-Fibonacci
    polynomial G_k (G_k = G_(k-1) + q^(k-e) G_(k-2), best e of 1..3), then by |A|+|B|,
    A, B and the partition. Candidates sharing the best (defect, misses) score have rank 1.
    Candidates whose value vanishes for every n rank below all others and are never
    Fibonacci-type.

    Args:
        partition: (m, s) with m + s + 2 = N; every partition when omitted
    """
    for lo, hi in (A_range, B_range):
        if lo > hi or max(abs(lo), abs(hi)) > MAX_SCAN_COEFF:
            raise ValueError(f"scan ranges must satisfy lo <= hi and |value| <= {MAX_SCAN_COEFF}, got ({lo}, {hi})")
    if not 1 <= max_n <= MAX_PROP3_N:
        raise ValueError(f"scan_exponents(): max_n must be in [1, {MAX_PROP3_N}], got {max_n}")
    if partition is not None:
        m, s = partition
        if m < 0 or s < 0 or m + s + 2 != N:
            raise ValueError(f"partition (m={m}, s={s}) does not satisfy m + s + 2 = {N}")
        parts = [(m, s)]
    else:
        parts = partitions(N)
    layouts = {(m, s): [_complex_layout(m, s, n) for n in range(1, max_n + 1)] for m, s in parts}
    work = [
        (A, B, m, s)
        for m, s in parts
        for A in range(A_range[0], A_range[1] + 1)
        for B in range(B_range[0], B_range[1] + 1)
        if (A + B) % 2 == 0
    ]
    diag(f"scan_exponents(): N={N}, {len(work)} candidates, max_n={max_n}")
    scored = run_cells(lambda c: _score(c[0], c[1], c[2], c[3], layouts[(c[2], c[3])]), work, jobs)
    # identically zero candidates cancel trivially and go last
    scored.sort(key=lambda r: (r["vanishing"], r["defect"], r["misses"], abs(r["A"]) + abs(r["B"]), r["A"], r["B"], r["s"]))
    candidates = []
    rank, previous = 0, None
    for r in scored:
        tier = (r["vanishing"], r["defect"], r["misses"])
        if tier != previous:
            rank, previous = rank + 1, tier
        candidates.append(ScanCandidate(rank=rank, fibonacci_type=r["misses"] == 0 and not r["vanishing"], **r))
    return ScanResult(
        N=N,
        max_n=max_n,
        A_range=list(A_range),
        B_range=list(B_range),
        partitions=[[m, s] for m, s in parts],
        candidates=candidates,
    )
