"""Ground fields: exact rationals or a prime field, with exact rank."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Field:
    characteristic: int = 0  # 0 means the rationals

    @classmethod
    def parse(cls, spec: str | None) -> "Field":
        """``"q"`` for the rationals, ``"p5"`` (or ``"5"``) for the field with 5 elements."""
        if spec is None or spec.lower() in ("q", "qq", "0"):
            return cls(0)
        s = spec.lower().lstrip("p")
        try:
            p = int(s)
        except ValueError:
            raise ValueError(f"unknown field {spec!r}") from None
        if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        return cls(p)

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def convert(self, x):
        if self.characteristic == 0:
            return Fraction(x)
        return int(x) % self.characteristic

    def is_zero(self, x) -> bool:
        return self.convert(x) == 0

    def inverse(self, x):
        if self.characteristic == 0:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.characteristic)

    def rank(self, rows) -> int:
        """Rank of a matrix given as a list of rows."""
        m = [[self.convert(x) for x in row] for row in rows]
        if not m:
            return 0
        ncols = len(m[0])
        rank = 0
        p = self.characteristic
        for col in range(ncols):
            piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            inv = self.inverse(m[rank][col])
            pivot_row = [x * inv for x in m[rank]]
            if p:
                pivot_row = [x % p for x in pivot_row]
            m[rank] = pivot_row
            for r in range(len(m)):
                if r != rank and m[r][col] != 0:
                    f = m[r][col]
                    row = [a - f * b for a, b in zip(m[r], pivot_row)]
                    m[r] = [x % p for x in row] if p else row
            rank += 1
        return rank


RATIONALS = Field(0)


class Span:
    """Subspace of ``field^dim`` kept in reduced row echelon form."""

    def __init__(self, field: Field, dim: int, vectors=()):
        self.field = field
        self.dim = dim
        self.rows: dict[int, list] = {}  # pivot column -> row with 1 there
        for v in vectors:
            self.add(v)

    def _norm(self, x):
        return self.field.convert(x)

    def reduce(self, v) -> list:
        """Residual of ``v`` after clearing every pivot column."""
        w = [self._norm(x) for x in v]
        for col, row in self.rows.items():
            f = w[col]
            if f:
                w = [self._norm(a - f * b) for a, b in zip(w, row)]
        return w

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def add(self, v) -> bool:
        w = self.reduce(v)
        col = next((k for k, x in enumerate(w) if x), None)
        if col is None:
            return False
        inv = self.field.inverse(w[col])
        w = [self._norm(x * inv) for x in w]
        for c, row in self.rows.items():
            f = row[col]
            if f:
                self.rows[c] = [self._norm(a - f * b) for a, b in zip(row, w)]
        self.rows[col] = w
        return True

    def basis(self) -> list[list]:
        return [self.rows[c] for c in sorted(self.rows)]

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def key(self) -> tuple:
        return tuple(tuple(r) for r in self.basis())

    def __len__(self) -> int:
        return len(self.rows)

    def copy(self) -> "Span":
        out = Span(self.field, self.dim)
        out.rows = {c: list(r) for c, r in self.rows.items()}
        return out
