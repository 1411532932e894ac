"""Plain-text batch files and results CSV.

A batch file is a header followed by one block per record::

    batchlp 1
    class feasible
    count 2
    n 2
    m 1

    lp 0
    c 1.0 1.0
    A 1.0 2.0
    b 4.0

Every matrix row gets its own ``A`` line. Box files (``class box``, ``m 0``)
hold ``lo`` and ``hi`` lines instead. Reals are written with ``repr`` so
they parse back to the same doubles.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .exceptions import BatchFileError
from .generate import LpClass

__all__ = ["BatchFile", "dumps", "loads", "read_batch", "write_batch", "write_results"]

MAGIC = "batchlp"
VERSION = 1


@dataclass(eq=False)
class BatchFile:
    klass: LpClass
    n: int
    m: int
    C: np.ndarray | None = None
    A: np.ndarray | None = None
    B: np.ndarray | None = None
    lo: np.ndarray | None = None
    hi: np.ndarray | None = None

    @property
    def is_box(self) -> bool:
        return self.klass is LpClass.BOX

    @property
    def count(self) -> int:
        return (self.lo if self.is_box else self.C).shape[0]

    def same_values(self, other: BatchFile) -> bool:
        names = ("lo", "hi") if self.is_box else ("C", "A", "B")
        return (self.klass is other.klass and (self.n, self.m) == (other.n, other.m)
                and all(getattr(self, k).tobytes() == getattr(other, k).tobytes()
                        for k in names))


def _reals(values) -> str:
    return " ".join(repr(v) for v in np.asarray(values, dtype=np.float64).tolist())


def dumps(bf: BatchFile) -> str:
    out = [f"{MAGIC} {VERSION}", f"class {bf.klass.value}", f"count {bf.count}",
           f"n {bf.n}", f"m {bf.m}"]
    for k in range(bf.count):
        out.append("")
        if bf.is_box:
            out += [f"box {k}", "lo " + _reals(bf.lo[k]), "hi " + _reals(bf.hi[k])]
        else:
            out += [f"lp {k}", "c " + _reals(bf.C[k])]
            out += ["A " + _reals(row) for row in bf.A[k]]
            out.append("b " + _reals(bf.B[k]))
    return "\n".join(out) + "\n"


class _Lines:
    """Iterator over non-blank lines that remembers line numbers."""

    def __init__(self, text):
        self._it = ((i, line.split()) for i, line in enumerate(text.splitlines(), 1))
        self.lineno = 0

    def next(self, what):
        for lineno, tokens in self._it:
            if tokens and not tokens[0].startswith("#"):
                self.lineno = lineno
                return tokens
        raise BatchFileError(f"unexpected end of file, expected {what}", self.lineno + 1)

    def keyed(self, key, count=None):
        tokens = self.next(key)
        if tokens[0] != key:
            raise BatchFileError(f"expected {key!r}, found {tokens[0]!r}", self.lineno)
        values = tokens[1:]
        if count is not None and len(values) != count:
            raise BatchFileError(
                f"{key!r} needs {count} values, found {len(values)}", self.lineno)
        return values

    def int(self, key):
        (value,) = self.keyed(key, 1)
        try:
            return int(value)
        except ValueError:
            raise BatchFileError(f"{key} must be an integer", self.lineno) from None

    def reals(self, key, count):
        try:
            return [float(v) for v in self.keyed(key, count)]
        except ValueError as exc:
            raise BatchFileError(str(exc), self.lineno) from None


def loads(text: str) -> BatchFile:
    lines = _Lines(text)
    head = lines.next("header")
    if head[:1] != [MAGIC] or len(head) != 2:
        raise BatchFileError("not a batchlp file", lines.lineno)
    if head[1] != str(VERSION):
        raise BatchFileError(f"unsupported format version {head[1]}", lines.lineno)
    (kname,) = lines.keyed("class", 1)
    try:
        klass = LpClass(kname)
    except ValueError:
        raise BatchFileError(f"unknown class {kname!r}", lines.lineno) from None
    count, n, m = lines.int("count"), lines.int("n"), lines.int("m")
    if count < 0 or n < 1 or (m < 1 and klass is not LpClass.BOX):
        raise BatchFileError(f"bad shape count={count} n={n} m={m}", lines.lineno)

    if klass is LpClass.BOX:
        lo, hi = np.empty((count, n)), np.empty((count, n))
        for k in range(count):
            lines.keyed("box", 1)
            lo[k] = lines.reals("lo", n)
            hi[k] = lines.reals("hi", n)
            if np.any(lo[k] > hi[k]):
                raise BatchFileError(f"box {k} has lo > hi", lines.lineno)
        return BatchFile(klass, n, m, lo=lo, hi=hi)

    C, A, B = np.empty((count, n)), np.empty((count, m, n)), np.empty((count, m))
    for k in range(count):
        lines.keyed("lp", 1)
        C[k] = lines.reals("c", n)
        for i in range(m):
            A[k, i] = lines.reals("A", n)
        B[k] = lines.reals("b", m)
    for name, arr in (("c", C), ("A", A), ("b", B)):
        if not np.all(np.isfinite(arr)):
            raise BatchFileError(f"non-finite value in {name}")
    return BatchFile(klass, n, m, C=C, A=A, B=B)


def write_batch(path, bf: BatchFile) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps(bf))


def read_batch(path) -> BatchFile:
    with open(path, encoding="ascii") as fh:
        return loads(fh.read())


RESULT_FIELDS = ["index", "status", "objective", "phase1_iterations", "phase2_iterations"]


def write_results(stream, result) -> None:
    """One CSV row per LP; objective is blank unless optimal."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(RESULT_FIELDS)
    for k in range(len(result)):
        sol = result[k]
        obj = repr(sol.objective) if sol.optimal else ""
        w.writerow([k, sol.status.value, obj, sol.phase1_iterations, sol.phase2_iterations])


def results_text(result) -> str:
    buf = io.StringIO()
    write_results(buf, result)
    return buf.getvalue()
