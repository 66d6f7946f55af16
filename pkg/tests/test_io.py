from pathlib import Path

import mpmath as mp
import pytest

from modmass import io as mio
from modmass.errors import ParseError, ValidationError
from modmass.forms import MaassData
from modmass.hecke import eigenform, eigenforms, l_sym2

# short expansions make l_sym2 warn about its tail; the values are not under test here
pytestmark = pytest.mark.filterwarnings("ignore::modmass.errors.ConvergenceWarning")

DATA = Path(__file__).parent / "data" / "maass_synthetic.txt"


def test_parse_sample_file():
    d = mio.ingest_maass(DATA)
    assert d.parity == "even" and d.N == 40
    assert d.c(1) == 1.0
    assert abs(d.t - 9.533695261353557) < 1e-15


def test_multiplicativity_of_sample():
    d = mio.ingest_maass(DATA)
    for m, n in ((2, 3), (3, 5), (4, 7), (5, 8)):
        assert abs(d.c(m * n) - d.c(m) * d.c(n)) < 1e-12


def test_maass_round_trip(tmp_path):
    d = MaassData(3.25, {1: 1.0, 2: -0.5, 3: 1e-17}, "odd")
    p = tmp_path / "m.txt"
    mio.write_maass(d, p)
    back = mio.ingest_maass(p)
    assert back == d


def test_comments_and_blank_lines():
    text = "# header below\n\nmaass v1 t=1.5 parity=odd N=2\n1 1.0\n  # note\n2 0.25\n"
    d = mio.parse_maass(text)
    assert d.coeffs == {1: 1.0, 2: 0.25} and d.parity == "odd"


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("", 1),
        ("maas v1 t=1 parity=even N=1\n1 1\n", 1),
        ("maass v1 t=1 parity=even\n1 1\n", 1),
        ("maass v1 t=x parity=even N=1\n1 1\n", 1),
        ("maass v1 t=1 parity=sideways N=1\n1 1\n", 1),
        ("maass v1 t=1 parity=even N=2\n1 1\n1 2\n", 3),
        ("maass v1 t=1 parity=even N=2\n1 1\n3 2\n", 3),
        ("maass v1 t=1 parity=even N=2\n1 1\n2 nan\n", 3),
        ("maass v1 t=1 parity=even N=2\n1 1\n2\n", 3),
        ("maass v1 t=1 parity=even N=2\n1 1\n0 1\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as exc:
        mio.parse_maass(text)
    assert exc.value.lineno == lineno


def test_validation_errors():
    with pytest.raises(ValidationError):
        mio.parse_maass("maass v1 t=1 parity=even N=2\n2 1\n")
    with pytest.raises(ValidationError):
        mio.parse_maass("maass v1 t=1 parity=even N=2\n1 0\n")


def test_eigenform_cache_round_trip(tmp_path):
    fs = [eigenform(12, 60), eigenform(16, 60)] + eigenforms(24, 60)
    p = tmp_path / "cache.txt"
    mio.write_eigenforms(fs, p)
    back = mio.read_eigenforms(p)
    assert len(back) == 4
    for f, g in zip(fs, back):
        assert (f.k, f.index, f.N, f.exact) == (g.k, g.index, g.N, g.exact)
        assert abs(float(f.l_sym2_at_1) - float(g.l_sym2_at_1)) < 1e-15
        with f.prec.workprec():
            for n in (1, 2, 17, 60):
                assert abs(f.lam(n) - g.lam(n)) < mp.mpf(10) ** -28 * max(1, abs(f.lam(n)))
        if f.exact:
            assert f.coeffs == g.coeffs


def test_eigenform_cache_errors():
    good = mio.format_eigenforms([eigenform(12, 3)])
    with pytest.raises(ParseError):
        mio.parse_eigenforms("not a cache\n")
    with pytest.raises(ParseError):
        mio.parse_eigenforms(good.replace("end\n", ""))
    with pytest.raises(ParseError):
        mio.parse_eigenforms(good.replace("\n3 ", "\n2 "))
    lines = good.splitlines()
    with pytest.raises(ParseError):
        mio.parse_eigenforms("\n".join(lines[:2] + lines[3:]) + "\n")


def test_cached_form_recomputes_l_value():
    f = eigenform(12, 2000)
    g = mio.parse_eigenforms(mio.format_eigenforms([f]))[0]
    assert abs(float(l_sym2(g, 1.0)) - float(f.l_sym2_at_1)) < 1e-12
