import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fareywave.core import K, K1, DomainError, SignConvention
from fareywave.signal_io import (
    CSVFormatError,
    FunctionTable,
    format_csv,
    read_csv,
    recover_step,
    synthesize,
    tabulate,
    uniform_grid,
    with_metadata,
    write_csv,
)
from fareywave.transform import SampledSignal, ScaleGrid, cwt, dwt

finite = st.floats(allow_nan=False, allow_infinity=False)


def round_trip(value, **kw):
    return read_csv(io.StringIO(format_csv(value)), **kw)


def parse(text):
    return read_csv(io.StringIO(text))


class TestTabulate:
    def test_farey(self):
        assert tabulate("farey", 0, 1, 3).rows == [(0.0, 0.0), (0.5, K), (1.0, 0.0)]

    def test_phi(self):
        assert tabulate("phi", -1, 1, 3).rows == [(-1.0, 0.0), (0.0, K), (1.0, 0.0)]

    def test_psi_knot(self):
        t = tabulate("psi", -0.5, 1.5, 5, SignConvention.PIECEWISE_FORM)
        assert (0.5, -K1) in t.rows

    def test_row_count_and_endpoints(self):
        t = tabulate("psi", -0.5, 1.5, 401)
        assert len(t) == 401
        assert t.x[0] == -0.5 and t.x[-1] == 1.5
        assert np.all(np.diff(t.x) > 0)

    @given(st.floats(-5, 5), st.floats(1e-3, 5), st.integers(2, 500))
    @settings(max_examples=50)
    def test_uniform_grid_exact_ends(self, lo, width, n):
        x = uniform_grid(lo, lo + width, n)
        assert x[0] == lo and x[-1] == lo + width and x.size == n
        assert np.all(np.diff(x) > 0)

    def test_errors(self):
        with pytest.raises(ValueError, match="unknown function"):
            tabulate("sinc", 0, 1, 3)
        with pytest.raises(ValueError):
            tabulate("phi", 1, 0, 3)
        with pytest.raises(ValueError):
            tabulate("phi", 0, 1, 1)
        with pytest.raises(DomainError):
            tabulate("farey", -1, 1, 3)

    def test_table_validation(self):
        with pytest.raises(ValueError):
            FunctionTable(np.array([0.0]), np.array([1.0]))
        with pytest.raises(ValueError, match="increasing"):
            FunctionTable(np.array([0.0, 0.0]), np.array([1.0, 2.0]))


class TestSynthesize:
    def test_constant(self):
        np.testing.assert_array_equal(synthesize("constant", {"c": 1}, 0, 1, 4).samples, [1, 1, 1, 1])

    def test_step(self):
        s = synthesize("step", {"at": 0}, -1, 0.5, 5)
        np.testing.assert_array_equal(s.samples, [0, 0, 1, 1, 1])

    def test_sine(self):
        s = synthesize("sine", {"freq": 1}, math.pi / 2, 0.1, 3)
        assert s.samples[0] == 1.0

    def test_chirp_starts_at_zero_phase(self):
        s = synthesize("chirp", {"f0": 1, "f1": 10}, 3.0, 0.01, 100)
        assert s.samples[0] == 0.0
        assert np.max(np.abs(s.samples)) <= 1.0

    def test_bump(self):
        s = synthesize("bump", {"center": 1.0, "width": 0.5, "carrier": 6.0}, 0.0, 0.5, 5)
        assert s.samples[2] == 1.0
        assert s.samples[0] == pytest.approx(math.exp(-2) * math.cos(6.0))

    def test_deterministic(self):
        a = synthesize("chirp", {"f0": 1, "f1": 3}, 0, 0.1, 64)
        b = synthesize("chirp", {"f0": 1, "f1": 3}, 0, 0.1, 64)
        assert np.array_equal(a.samples, b.samples)

    @pytest.mark.parametrize("kind, params", [
        ("sine", {"freq": 0}), ("sine", {"freq": -1}), ("sine", {}), ("chirp", {"f0": 1}),
        ("bump", {"width": 0}), ("bump", {"carrier": -1}), ("constant", {"c": math.inf}),
        ("step", {"freq": 1}), ("noise", {}),
    ])
    def test_invalid(self, kind, params):
        with pytest.raises(ValueError):
            synthesize(kind, params, 0, 0.1, 10)

    def test_grid_checks(self):
        with pytest.raises(ValueError):
            synthesize("constant", {}, 0, 0.0, 10)
        with pytest.raises(ValueError):
            synthesize("constant", {}, 0, 0.1, 1)


class TestRoundTrip:
    def test_three_samples(self):
        s = SampledSignal(0.1, 0.3, [1 / 3, -2.5e-300, 7e200])
        back = round_trip(s)
        assert isinstance(back, SampledSignal)
        assert np.array_equal(back.samples, s.samples)
        assert np.array_equal(back.times, s.times)

    @given(finite, st.floats(1e-6, 1e3), st.lists(finite, min_size=2, max_size=40))
    @settings(max_examples=200)
    def test_signal_lossless(self, origin, step, values):
        s = SampledSignal(origin, step, values)
        if not np.all(np.diff(s.times) > 0):
            return  # step below the resolution of origin
        back = round_trip(s)
        assert np.array_equal(back.samples, s.samples)
        assert np.array_equal(back.times, s.times)

    @given(st.lists(st.tuples(finite, finite), min_size=2, max_size=30, unique_by=lambda r: r[0]))
    @settings(max_examples=100)
    def test_table_lossless(self, rows):
        rows = sorted(rows)
        t = FunctionTable(np.array([r[0] for r in rows]), np.array([r[1] for r in rows]))
        back = round_trip(t)
        assert isinstance(back, FunctionTable)
        assert np.array_equal(back.x, t.x) and np.array_equal(back.values, t.values)

    def test_cwt_coefficients(self):
        f = synthesize("bump", {"width": 0.3, "carrier": 5}, -1, 1 / 32, 65)
        c = cwt(f, ScaleGrid([0.1, 0.25, 0.5], f.times[::4]))
        back = round_trip(c)
        assert not back.is_dyadic
        assert np.array_equal(back.coefficients, c.coefficients)
        assert np.array_equal(back.grid.scales, c.grid.scales)
        assert np.array_equal(back.grid.positions, c.grid.positions)

    def test_dwt_coefficients(self):
        f = synthesize("bump", {"width": 0.3}, -1, 1 / 64, 129)
        c = dwt(f, (-1, 2), (-3, 4))
        back = with_metadata(round_trip(c), c.wavelet_id, c.convention, c.signal_grid)
        assert back.is_dyadic
        assert np.array_equal(back.levels, c.levels) and np.array_equal(back.shifts, c.shifts)
        assert np.array_equal(back.coefficients, c.coefficients)
        assert np.array_equal(back.grid.scales, c.grid.scales)
        assert back.signal_grid == c.signal_grid

    def test_file_paths(self, tmp_path):
        s = synthesize("sine", {"freq": 2}, 0, 0.25, 9)
        path = tmp_path / "s.csv"
        write_csv(s, path)
        assert path.read_text().startswith("t,f\n")
        assert np.array_equal(read_csv(path).samples, s.samples)

    def test_seventeen_digits(self):
        text = format_csv(FunctionTable(np.array([0.0, 1.0]), np.array([0.1, 1 / 3])))
        assert text == "x,value\n0,0.10000000000000001\n1,0.33333333333333331\n"

    def test_hand_written_times(self):
        s = parse("t,f\n0,1\n0.1,2\n0.2,3\n0.3,4\n")
        assert s.origin == 0.0 and s.step == pytest.approx(0.1, rel=1e-15)
        assert s.samples.tolist() == [1, 2, 3, 4]


class TestDiagnostics:
    def test_header_only(self):
        with pytest.raises(CSVFormatError, match="no data rows"):
            parse("t,f\n")

    def test_two_row_table(self):
        t = parse("x,value\n0,1\n1,2\n")
        assert isinstance(t, FunctionTable) and len(t) == 2

    def test_empty_file(self):
        with pytest.raises(CSVFormatError, match="empty"):
            parse("")

    def test_malformed_header(self):
        with pytest.raises(CSVFormatError, match="line 1.*header"):
            parse("a,b\n0,1\n")

    def test_non_numeric(self):
        with pytest.raises(CSVFormatError, match=r"line 3, column 'value'.*'abc'"):
            parse("x,value\n0,1\n1,abc\n")

    def test_non_finite(self):
        with pytest.raises(CSVFormatError, match="non-finite"):
            parse("x,value\n0,1\n1,nan\n")

    def test_unsorted(self):
        with pytest.raises(CSVFormatError, match="line 4.*'x'"):
            parse("x,value\n0,1\n1,2\n0.5,3\n")

    def test_cell_count(self):
        with pytest.raises(CSVFormatError, match="line 2: expected 2 cells, found 3"):
            parse("x,value\n0,1,2\n")

    def test_non_uniform_signal(self):
        with pytest.raises(CSVFormatError, match="uniformly"):
            parse("t,f\n0,1\n1,2\n3,3\n")

    def test_single_sample_signal(self):
        with pytest.raises(CSVFormatError, match="2 samples"):
            parse("t,f\n0,1\n")

    def test_incomplete_grid(self):
        with pytest.raises(CSVFormatError, match="full"):
            parse("scale,position,coefficient\n1,0,1\n1,1,2\n2,0,3\n")

    def test_duplicate_entry(self):
        with pytest.raises(CSVFormatError, match="duplicate"):
            parse("j,k,coefficient\n0,0,1\n0,0,2\n1,0,3\n1,1,4\n")

    def test_integer_levels(self):
        with pytest.raises(CSVFormatError, match="column 'j'"):
            parse("j,k,coefficient\n0.5,0,1\n")

    def test_unwritable_type(self):
        with pytest.raises(TypeError):
            format_csv([1, 2, 3])


@given(st.floats(-1e6, 1e6), st.floats(1e-9, 1e3), st.integers(2, 200))
@settings(max_examples=200)
def test_recovered_step_reproduces_times(origin, step, n):
    t = origin + step * np.arange(n)
    if not np.all(np.diff(t) > 0):
        return
    h = recover_step(t)
    assert np.array_equal(t[0] + h * np.arange(n), t)
