"""Line-oriented text formats: Maass coefficient files and the eigenform cache.

Maass file::

    maass v1 t=9.5336952613535575 parity=even N=3
    1 1.0
    2 1.549...
    3 0.246...

Eigenform cache (one or more records)::

    modmass-eigenforms v1
    form k=12 index=0 N=3 l_sym2_at_1=0.6317929457278...
    1 1.0 1
    2 -0.04397... -24
    3 0.0949... 252
    end

Each data line is ``n lambda(n) [a(n)]``; a(n) is present for exact forms.
Blank lines and lines starting with ``#`` are ignored everywhere.
"""

from __future__ import annotations

import math
from pathlib import Path

import mpmath as mp

from .errors import ParseError, ValidationError
from .forms import MaassData
from .hecke import HeckeEigenform
from .numerics import Precision

MAASS_HEADER = "maass v1"
CACHE_HEADER = "modmass-eigenforms v1"


def _fields(tokens, lineno, required):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}", lineno)
        key, val = tok.split("=", 1)
        if key in out:
            raise ParseError(f"repeated key {key!r}", lineno)
        out[key] = val
    missing = [k for k in required if k not in out]
    if missing:
        raise ParseError(f"missing header field(s) {', '.join(missing)}", lineno)
    return out


def _int(text, lineno, what):
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}", lineno) from None


def _float(text, lineno, what):
    try:
        v = float(text)
    except ValueError:
        raise ParseError(f"{what} must be a number, got {text!r}", lineno) from None
    if not math.isfinite(v):
        raise ParseError(f"{what} is not finite", lineno)
    return v


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_maass(text):
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty Maass file", 1)
    lineno, head = lines[0]
    if not head.startswith(MAASS_HEADER + " ") and head != MAASS_HEADER:
        raise ParseError(f"expected header starting with {MAASS_HEADER!r}", lineno)
    hdr = _fields(head[len(MAASS_HEADER) :].split(), lineno, ("t", "parity", "N"))
    t = _float(hdr["t"], lineno, "t")
    parity = hdr["parity"]
    if parity not in ("even", "odd"):
        raise ParseError(f"parity must be even or odd, got {parity!r}", lineno)
    N = _int(hdr["N"], lineno, "N")
    if N < 1:
        raise ParseError("N must be positive", lineno)
    coeffs = {}
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected '<n> <c(n)>', got {line!r}", lineno)
        n = _int(parts[0], lineno, "n")
        if n < 1:
            raise ParseError(f"index must be positive, got {n}", lineno)
        if n > N:
            raise ParseError(f"index {n} exceeds N={N}", lineno)
        if n in coeffs:
            raise ParseError(f"duplicate index {n}", lineno)
        coeffs[n] = _float(parts[1], lineno, f"c({n})")
    if 1 not in coeffs:
        raise ValidationError("c(1) is missing")
    return MaassData(t, coeffs, parity)


def ingest_maass(path):
    return parse_maass(Path(path).read_text())


def format_maass(data: MaassData):
    lines = [f"{MAASS_HEADER} t={data.t!r} parity={data.parity} N={data.N}"]
    lines += [f"{n} {data.coeffs[n]!r}" for n in sorted(data.coeffs)]
    return "\n".join(lines) + "\n"


def write_maass(data: MaassData, path):
    Path(path).write_text(format_maass(data))


# ---------------------------------------------------------------------------
# eigenform cache


def format_eigenforms(forms, digits=30):
    out = [CACHE_HEADER]
    for f in forms:
        l1 = float(f.l_sym2_at_1)
        out.append(f"form k={f.k} index={f.index} N={f.N} exact={int(f.exact)} l_sym2_at_1={l1!r}")
        with f.prec.workprec():
            for n in range(1, f.N + 1):
                lam = mp.nstr(f.lam(n), digits, strip_zeros=False)
                if f.exact:
                    out.append(f"{n} {lam} {f.coeffs[n]}")
                else:
                    out.append(f"{n} {lam} {mp.nstr(mp.mpf(f.coeffs[n]), digits)}")
        out.append("end")
    return "\n".join(out) + "\n"


def write_eigenforms(forms, path, digits=30):
    Path(path).write_text(format_eigenforms(forms, digits))


def parse_eigenforms(text, prec: Precision | None = None):
    """Records back as HeckeEigenform objects (l_sym2_at_1 is re-attached as given)."""
    prec = Precision.default() if prec is None else prec
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != CACHE_HEADER:
        raise ParseError(f"expected header {CACHE_HEADER!r}", lines[0][0] if lines else 1)
    forms = []
    i = 1
    while i < len(lines):
        lineno, line = lines[i]
        if not line.startswith("form "):
            raise ParseError(f"expected a 'form' record, got {line!r}", lineno)
        hdr = _fields(line.split()[1:], lineno, ("k", "index", "N", "l_sym2_at_1"))
        k = _int(hdr["k"], lineno, "k")
        index = _int(hdr["index"], lineno, "index")
        N = _int(hdr["N"], lineno, "N")
        exact = bool(_int(hdr.get("exact", "1"), lineno, "exact"))
        l1 = _float(hdr["l_sym2_at_1"], lineno, "l_sym2_at_1")
        coeffs = [0] * (N + 1)
        seen = set()
        i += 1
        while True:
            if i >= len(lines):
                raise ParseError("record not terminated by 'end'", lineno)
            lineno, line = lines[i]
            i += 1
            if line == "end":
                break
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ParseError(f"expected 'n lambda [a]', got {line!r}", lineno)
            n = _int(parts[0], lineno, "n")
            if not 1 <= n <= N:
                raise ParseError(f"index {n} outside 1..{N}", lineno)
            if n in seen:
                raise ParseError(f"duplicate index {n}", lineno)
            seen.add(n)
            with prec.workprec():
                if len(parts) == 3:
                    a = _int(parts[2], lineno, "a(n)") if exact else mp.mpf(parts[2])
                else:
                    a = mp.mpf(parts[1]) * mp.mpf(n) ** (mp.mpf(k - 1) / 2)
                    if exact:
                        a = int(mp.nint(a))
            coeffs[n] = a
        if len(seen) != N:
            raise ParseError(f"record k={k} index={index} has {len(seen)} of {N} coefficients", lineno)
        f = HeckeEigenform(k, tuple(coeffs), index, exact, prec)
        f.__dict__["l_sym2_at_1"] = l1
        forms.append(f)
    return forms


def read_eigenforms(path, prec: Precision | None = None):
    return parse_eigenforms(Path(path).read_text(), prec)
