"""
Plain-text matrix, BD and vector files

    M <rows> <cols>        dense matrix, one whitespace-separated row per line
    BD <rows> <cols>       BD grid, same layout
    V <len>                vector, one value per line

'#' starts a comment anywhere on a line; blank lines are ignored. Values are
decimal floats, hexadecimal floats (float.hex) or rationals 'p/q'. Writers
emit 17 significant digits, which round-trips every binary64, or exact hex.
"""
from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .bd import BdMatrix
from .exceptions import ParseError

logger = logging.getLogger(__name__)

TAGS = {"M": 2, "BD": 2, "V": 1}

PathLike = Union[str, Path]


@dataclass
class ParsedFile:
    """Result of parsing one file"""
    tag: str
    data: np.ndarray
    source: str = "<string>"

    def as_bd(self) -> BdMatrix:
        return BdMatrix(self.data)


def format_value(v: float, hex: bool = False) -> str:
    v = float(v)
    return v.hex() if hex else f"{v:.17g}"


def _tokens(line: str) -> Iterator[Tuple[int, str]]:
    """(1-based column, token) pairs of a comment-stripped line"""
    col = 0
    for part in line.split("#", 1)[0].split():
        col = line.index(part, col)
        yield col + 1, part
        col += len(part)


def parse_value(tok: str, line: int = 0, column: int = 0) -> float:
    try:
        if "x" in tok.lower():
            v = float.fromhex(tok)
        elif "/" in tok:
            v = float(Fraction(tok))
        else:
            v = float(tok)
    except (ValueError, ZeroDivisionError, OverflowError):
        raise ParseError(f"not a number: {tok!r}", line, column) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value {tok!r}", line, column)
    return v


def _dim(tok: str, line: int, column: int) -> int:
    try:
        d = int(tok)
    except ValueError:
        raise ParseError(f"bad dimension {tok!r}", line, column) from None
    if d < 1:
        raise ParseError(f"dimension must be positive, got {d}", line, column)
    return d


def parse_text(text: str, source: str = "<string>", expect: Optional[str] = None) -> ParsedFile:
    """Parse the contents of an M, BD or V file"""
    lines = [(no, list(_tokens(raw))) for no, raw in enumerate(text.splitlines(), start=1)]
    lines = [(no, toks) for no, toks in lines if toks]
    if not lines:
        raise ParseError("empty file: missing header", 1, 1)
    no, header = lines[0]
    col, tag = header[0]
    if tag not in TAGS:
        raise ParseError(f"unknown header tag {tag!r} (expected M, BD or V)", no, col)
    if expect is not None and tag != expect:
        raise ParseError(f"expected a {expect} file, found {tag}", no, col)
    if len(header) != 1 + TAGS[tag]:
        raise ParseError(f"{tag} header takes {TAGS[tag]} dimension(s)", no, col)
    dims = [_dim(t, no, c) for c, t in header[1:]]
    rows, cols = (dims[0], 1) if tag == "V" else (dims[0], dims[1])

    body = lines[1:]
    if len(body) != rows:
        at = body[rows][0] if len(body) > rows else (body[-1][0] + 1 if body else no + 1)
        raise ParseError(f"expected {rows} data line(s), found {len(body)}", at, 1)
    data = np.empty((rows, cols))
    for r, (lno, toks) in enumerate(body):
        if len(toks) != cols:
            c = toks[cols][0] if len(toks) > cols else toks[-1][0]
            raise ParseError(f"expected {cols} value(s), found {len(toks)}", lno, c)
        for j, (c, t) in enumerate(toks):
            data[r, j] = parse_value(t, lno, c)
    if tag == "V":
        data = data[:, 0]
    logger.debug(f"parsed {tag} {data.shape} from {source}")
    return ParsedFile(tag=tag, data=data, source=source)


def read_file(path: PathLike, expect: Optional[str] = None) -> ParsedFile:
    """Read a file; '-' reads standard input"""
    if str(path) == "-":
        return parse_text(sys.stdin.read(), "<stdin>", expect)
    return parse_text(Path(path).read_text(), str(path), expect)


def read_bd(path: PathLike) -> BdMatrix:
    return read_file(path, "BD").as_bd()


def read_matrix(path: PathLike) -> np.ndarray:
    return read_file(path, "M").data


def read_vector(path: PathLike) -> np.ndarray:
    return read_file(path, "V").data


def format_matrix(A: Sequence[Sequence[float]], tag: str = "M", hex: bool = False,
                  comment: Optional[str] = None) -> str:
    A = np.asarray(A, dtype=np.float64)
    out: List[str] = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{tag} {A.shape[0]} {A.shape[1]}")
    out.extend(" ".join(format_value(v, hex) for v in row) for row in A)
    return "\n".join(out) + "\n"


def format_vector(v: Sequence[float], hex: bool = False, comment: Optional[str] = None) -> str:
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    out: List[str] = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"V {v.size}")
    out.extend(format_value(x, hex) for x in v)
    return "\n".join(out) + "\n"


def write_text(path: Optional[PathLike], text: str, stream: IO[str] = None) -> None:
    """Write to path, or to stream (stdout by default) when path is None or '-'"""
    if path is None or str(path) == "-":
        (stream or sys.stdout).write(text)
    else:
        Path(path).write_text(text)
        logger.info(f"wrote {path}")


def write_bd(path: Optional[PathLike], B: BdMatrix, hex: bool = False, comment: Optional[str] = None) -> None:
    write_text(path, format_matrix(B.grid, "BD", hex, comment))


def write_matrix(path: Optional[PathLike], A, hex: bool = False, comment: Optional[str] = None) -> None:
    write_text(path, format_matrix(A, "M", hex, comment))


def write_vector(path: Optional[PathLike], v, hex: bool = False, comment: Optional[str] = None) -> None:
    write_text(path, format_vector(v, hex, comment))
