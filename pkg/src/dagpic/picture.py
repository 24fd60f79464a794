"""Pictures (2D strings), boundary pictures and the picture text format."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

BORDER = "#"


class PictureFormatError(ValueError):
    def __init__(self, message, line=None, token=None, source="<text>"):
        self.line = line
        self.token = token
        self.source = source
        where = source if line is None else f"{source}:{line}"
        if token is not None:
            message = f"{message} (token {token!r})"
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class Picture:
    """An ``m x n`` grid of symbols; ``Picture(())`` is the empty picture."""

    cells: tuple = ()

    def __post_init__(self):
        cells = tuple(tuple(r) for r in self.cells)
        object.__setattr__(self, "cells", cells)
        widths = {len(r) for r in cells}
        if len(widths) > 1:
            raise ValueError("ragged rows")
        if cells and 0 in widths:
            raise ValueError("only the empty picture may have a zero dimension")
        for row in cells:
            for s in row:
                if s == BORDER:
                    raise ValueError(f"reserved symbol {BORDER!r} inside a picture")

    @classmethod
    def from_string(cls, text):
        """``"ab/ba"`` -> 2x2 picture; one character per cell."""
        if not text:
            return cls(())
        return cls(tuple(tuple(row) for row in text.split("/")))

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    @property
    def dims(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        """1-based access ``p[i, j]``."""
        i, j = ij
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(ij)
        return self.cells[i - 1][j - 1]

    def symbols(self):
        return [s for row in self.cells for s in row]

    def __str__(self):
        return "/".join("".join(r) for r in self.cells) or "Λ"


EMPTY_PICTURE = Picture(())


@dataclass(frozen=True)
class BoundaryPicture:
    """A picture framed by ``#``; indices run over ``0..m+1`` x ``0..n+1``."""

    inner: Picture

    @property
    def rows(self):
        return self.inner.rows + 2

    @property
    def cols(self):
        return self.inner.cols + 2

    def __getitem__(self, ij):
        i, j = ij
        m, n = self.inner.dims
        if not (0 <= i <= m + 1 and 0 <= j <= n + 1):
            raise IndexError(ij)
        if i in (0, m + 1) or j in (0, n + 1):
            return BORDER
        return self.inner[i, j]

    @property
    def cells(self):
        return tuple(tuple(self[i, j] for j in range(self.cols))
                     for i in range(self.rows))

    def strip(self) -> Picture:
        return self.inner


def boundary(p: Picture) -> BoundaryPicture:
    return BoundaryPicture(p)


def parse_picture(text: str, source="<text>") -> Picture:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise PictureFormatError("missing header", 1, source=source)
    head = lines[0].split()
    if len(head) != 2:
        raise PictureFormatError("header must be 'm n'", 1, lines[0], source)
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError:
        raise PictureFormatError("non-integer dimension", 1, lines[0], source) from None
    if m < 0 or n < 0 or (m == 0) != (n == 0):
        raise PictureFormatError("bad dimensions", 1, lines[0], source)
    body = lines[1:]
    if len(body) != m:
        raise PictureFormatError(f"expected {m} rows, found {len(body)}", len(lines), source=source)
    rows = []
    for k, line in enumerate(body, start=2):
        toks = line.split()
        if len(toks) != n:
            raise PictureFormatError(f"ragged row: expected {n} symbols, found {len(toks)}", k, line, source)
        for t in toks:
            if t == BORDER:
                raise PictureFormatError("reserved symbol in picture body", k, t, source)
        rows.append(tuple(toks))
    return Picture(tuple(rows))


def render_picture(p: Picture) -> str:
    lines = [f"{p.rows} {p.cols}"]
    lines += [" ".join(row) for row in p.cells]
    return "\n".join(lines) + "\n"


def shapes(max_rows, max_cols):
    """Λ first, then every nonempty shape ordered by (area, rows, cols)."""
    out = [(m, n) for m in range(1, max_rows + 1) for n in range(1, max_cols + 1)]
    out.sort(key=lambda s: (s[0] * s[1], s[0], s[1]))
    return [(0, 0)] + out


def enumerate_pictures(alphabet, max_rows, max_cols):
    """Every picture within the bounds exactly once, area-then-lex order."""
    if max_rows < 0 or max_cols < 0:
        raise ValueError("bounds must be non-negative")
    sigma = sorted(set(alphabet))
    for m, n in shapes(max_rows, max_cols):
        if m == 0:
            yield EMPTY_PICTURE
            continue
        for flat in itertools.product(sigma, repeat=m * n):
            yield Picture(tuple(flat[i * n:(i + 1) * n] for i in range(m)))


def picture_order_key(p: Picture, alphabet):
    """Position of ``p`` in :func:`enumerate_pictures` order, as a sortable key."""
    sigma = sorted(set(alphabet))
    rank = {s: k for k, s in enumerate(sigma)}
    m, n = p.dims
    return (m * n, m, n, tuple(rank[s] for s in p.symbols()))
