"""
Report records for the command line

Every rational is carried as a pre-formatted "p/q" string, so JSON output
produced by model_dump_json never contains a float. Each report knows how
to render itself as text lines and as flat table rows for CSV.
"""

from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict


def _tuple_text(values: Sequence[str]) -> str:
    return "(" + ", ".join(values) + ")"


class WitnessModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int
    value: str

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[Any]]) -> List["WitnessModel"]:
        return [cls(index=int(index), value=str(value)) for index, value in pairs]


class RootCountModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    squarefree_degree: int
    real_roots: int
    real_rooted: bool


class SequenceFlagsModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    nonnegative: bool
    log_concave: bool
    unimodal: bool
    palindromic: bool


class PolynomialReport(BaseModel):
    """One polynomial in one basis"""

    model_config = ConfigDict(frozen=True)

    source: str
    d: int
    basis: str
    coefficients: List[str]
    rendered: Optional[str] = None

    def text_lines(self) -> List[str]:
        lines = [f"{self.source} basis={self.basis} d={self.d}"]
        lines.append(f"coefficients: {_tuple_text(self.coefficients)}")
        if self.rendered is not None:
            lines.append(f"E(n) = {self.rendered}")
        return lines

    def table_rows(self) -> List[Dict[str, Any]]:
        return [
            {"source": self.source, "basis": self.basis, "index": index, "coefficient": value}
            for index, value in enumerate(self.coefficients)
        ]


class CheckReport(BaseModel):
    """Magic and h* verdicts for one Ehrhart polynomial"""

    model_config = ConfigDict(frozen=True)

    source: str
    d: int
    method: str
    power: List[str]
    magic: List[str]
    magic_positive: bool
    witnesses: List[WitnessModel]
    magic_palindromic: bool
    hstar: List[str]
    hstar_integral: bool
    hstar_h0_is_one: bool
    hstar_sum_matches: bool
    hstar_flags: SequenceFlagsModel
    hstar_roots: RootCountModel
    hstar_real_rooted: bool

    def text_lines(self) -> List[str]:
        witness_text = ", ".join(f"a_{w.index} = {w.value}" for w in self.witnesses) or "none"
        flags = self.hstar_flags
        return [
            f"{self.source} d={self.d} method={self.method}",
            f"power:  {_tuple_text(self.power)}",
            f"magic:  {_tuple_text(self.magic)}",
            f"hstar:  {_tuple_text(self.hstar)}",
            f"magic_positive: {str(self.magic_positive).lower()}",
            f"negative witnesses: {witness_text}",
            f"magic_palindromic: {str(self.magic_palindromic).lower()}",
            f"hstar_nonnegative: {str(flags.nonnegative).lower()}",
            f"hstar_integral: {str(self.hstar_integral).lower()}",
            f"hstar_palindromic: {str(flags.palindromic).lower()}",
            f"hstar_log_concave: {str(flags.log_concave).lower()}",
            f"hstar_unimodal: {str(flags.unimodal).lower()}",
            f"hstar_real_rooted: {str(self.hstar_real_rooted).lower()} "
            f"({self.hstar_roots.real_roots} of {self.hstar_roots.squarefree_degree} distinct roots real)",
        ]

    def table_rows(self) -> List[Dict[str, Any]]:
        return [{
            "source": self.source,
            "d": self.d,
            "method": self.method,
            "magic_positive": self.magic_positive,
            "witnesses": ";".join(f"{w.index}:{w.value}" for w in self.witnesses),
            "magic_palindromic": self.magic_palindromic,
            "hstar": " ".join(self.hstar),
            "hstar_nonnegative": self.hstar_flags.nonnegative,
            "hstar_palindromic": self.hstar_flags.palindromic,
            "hstar_log_concave": self.hstar_flags.log_concave,
            "hstar_unimodal": self.hstar_flags.unimodal,
            "hstar_real_rooted": self.hstar_real_rooted,
        }]


class CountReportModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: str
    n: int
    count: str
    method: str

    def text_lines(self) -> List[str]:
        return [f"{self.source} n={self.n} count={self.count} method={self.method}"]

    def table_rows(self) -> List[Dict[str, Any]]:
        return [self.model_dump()]


class TableCellModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    m: int
    m2: int
    magic_positive: bool
    witness_index: Optional[int] = None
    witness_value: Optional[str] = None
    hstar_real_rooted: Optional[bool] = None
    error: Optional[str] = None

    @property
    def symbol(self) -> str:
        if self.error is not None:
            return "?"
        return "+" if self.magic_positive else "-"


class TableReport(BaseModel):
    """K_{m,m2} magic-positivity grid; + positive, - not positive"""

    model_config = ConfigDict(frozen=True)

    kind: str
    max_side: int
    max_total: int
    cells: List[TableCellModel]

    def text_lines(self) -> List[str]:
        columns = sorted({cell.m2 for cell in self.cells})
        rows = sorted({cell.m for cell in self.cells})
        lookup = {(cell.m, cell.m2): cell.symbol for cell in self.cells}
        width = max(len(str(c)) for c in columns) if columns else 1
        lines = ["m\\n " + " ".join(str(c).rjust(width) for c in columns)]
        for m in rows:
            marks = " ".join(lookup.get((m, c), " ").rjust(width) for c in columns)
            lines.append(f"{str(m).rjust(3)} {marks}".rstrip())
        return lines

    def table_rows(self) -> List[Dict[str, Any]]:
        return [cell.model_dump() for cell in self.cells]


class ScanRowModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    d: int
    magic_positive: bool
    palindromic: bool
    witnesses: List[WitnessModel]
    aux_positive: Optional[bool] = None
    induction_holds: Optional[bool] = None
    integer_coefficients: Optional[bool] = None
    error: Optional[str] = None

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "ScanRowModel":
        data = dict(record)
        data["witnesses"] = WitnessModel.from_pairs(data.get("witnesses", []))
        return cls(**data)

    def text_line(self) -> str:
        if self.error is not None:
            return f"{self.kind} d={self.d} error: {self.error}"
        verdict = "positive" if self.magic_positive else "NOT positive"
        parts = [f"{self.kind} d={self.d} magic {verdict}", f"palindromic={str(self.palindromic).lower()}"]
        if self.aux_positive is not None:
            parts.append(f"aux_positive={str(self.aux_positive).lower()}")
        if self.induction_holds is not None:
            parts.append(f"induction={str(self.induction_holds).lower()}")
        if self.witnesses:
            parts.append("witnesses=" + ",".join(f"{w.index}:{w.value}" for w in self.witnesses))
        return " ".join(parts)

    def table_row(self) -> Dict[str, Any]:
        row = self.model_dump(exclude={"witnesses"})
        row["witnesses"] = ";".join(f"{w.index}:{w.value}" for w in self.witnesses)
        return row


class ScanReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    max_d: int
    rows: List[ScanRowModel]
    all_positive: bool
    failures: List[int]
    summary: str

    def text_lines(self) -> List[str]:
        return [row.text_line() for row in self.rows] + [self.summary]

    def table_rows(self) -> List[Dict[str, Any]]:
        return [row.table_row() for row in self.rows]


class SelftestCheckModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: str


class SelftestReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    checks: List[SelftestCheckModel]
    all_passed: bool

    def text_lines(self) -> List[str]:
        lines = [
            f"[{'PASS' if check.passed else 'FAIL'}] {check.name}: {check.detail}"
            for check in self.checks
        ]
        passed = sum(1 for check in self.checks if check.passed)
        lines.append(f"selftest: {passed}/{len(self.checks)} passed")
        return lines

    def table_rows(self) -> List[Dict[str, Any]]:
        return [check.model_dump() for check in self.checks]
