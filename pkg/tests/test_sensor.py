import pytest
from hypothesis import given, strategies as st

from avoidsim.sensor import (
    DistanceSample,
    ProtocolError,
    SerialMockSource,
    TraceError,
    parse_serial_line,
    read_trace,
    synthetic,
)


def write_trace(tmp_path, rows, header="t_ms,distance_cm"):
    path = tmp_path / "trace.csv"
    lines = [header] + [f"{t},{d}" for t, d in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


class TestReadTrace:
    def test_identity_resample(self, tmp_path):
        path = write_trace(tmp_path, [(0, 30), (100, 30), (200, 30)])
        samples = read_trace(path)
        assert [(s.frame_t, s.distance_cm) for s in samples] == [
            (1, 30.0), (2, 30.0), (3, 30.0),
        ]

    def test_clamping_applied_at_ingestion(self, tmp_path):
        path = write_trace(tmp_path, [(0, 1.0)])
        assert read_trace(path)[0].distance_cm == 0.0

    def test_intermediate_rows_dropped_by_hold(self, tmp_path):
        path = write_trace(tmp_path, [(0, 30), (50, 99), (100, 40)])
        samples = read_trace(path)
        assert [s.distance_cm for s in samples] == [30.0, 40.0]

    def test_sparse_rows_held_across_frames(self, tmp_path):
        path = write_trace(tmp_path, [(0, 30), (300, 10)])
        samples = read_trace(path)
        assert [s.distance_cm for s in samples] == [30.0, 30.0, 30.0, 10.0]

    def test_malformed_row_reports_line_number(self, tmp_path):
        path = write_trace(tmp_path, [(0, 30)])
        with open(path, "a") as f:
            f.write("100,banana\n")
        with pytest.raises(TraceError, match=":3"):
            read_trace(path)

    def test_non_monotone_timestamps_rejected(self, tmp_path):
        path = write_trace(tmp_path, [(0, 30), (100, 30), (100, 40)])
        with pytest.raises(TraceError, match="increasing"):
            read_trace(path)

    def test_bad_header_rejected(self, tmp_path):
        path = write_trace(tmp_path, [(0, 30)], header="time,dist")
        with pytest.raises(TraceError, match="header"):
            read_trace(path)

    def test_replay_is_deterministic(self, tmp_path):
        path = write_trace(tmp_path, [(0, 17.5), (100, 440), (200, 3)])
        assert read_trace(path) == read_trace(path)


class TestSynthetic:
    def test_constant(self):
        samples = synthetic("constant", {"value": 30}, 10)
        assert len(samples) == 10
        assert all(s.distance_cm == 30.0 for s in samples)
        assert [s.frame_t for s in samples] == list(range(1, 11))

    def test_ramp_endpoints_inclusive(self):
        samples = synthetic("ramp", {"start": 100, "end": 10}, 10)
        assert samples[0].distance_cm == 100.0
        assert samples[-1].distance_cm == 10.0
        assert [s.distance_cm for s in samples] == sorted(
            (s.distance_cm for s in samples), reverse=True
        )

    def test_sinusoid_troughs_clamp_to_zero(self):
        samples = synthetic(
            "sinusoid", {"center": 30, "amplitude": 40, "period_frames": 20}, 40
        )
        assert any(s.distance_cm == 0.0 for s in samples)
        assert all(
            s.distance_cm == 0.0 or 2.0 <= s.distance_cm <= 450.0 or s.distance_cm == 700.0
            for s in samples
        )

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            synthetic("sawtooth", {}, 10)

    def test_bad_params_rejected(self):
        with pytest.raises(ValueError):
            synthetic("sinusoid", {"center": 30, "amplitude": 40, "period_frames": 0}, 5)

    @given(st.floats(allow_nan=False, allow_infinity=False, min_value=-1e6, max_value=1e6))
    def test_clamp_invariant_fuzz(self, value):
        (sample,) = synthetic("constant", {"value": value}, 1)
        d = sample.distance_cm
        assert d == 0.0 or 2.0 <= d <= 450.0 or d == 700.0


class TestSerialProtocol:
    def test_good_line(self):
        assert parse_serial_line("R 30\n") == 30.0

    def test_clamped_line(self):
        assert parse_serial_line("R 1\n") == 0.0

    @pytest.mark.parametrize("line", ["X 30\n", "R\n", "R thirty\n", "30\n", ""])
    def test_malformed_rejected(self, line):
        with pytest.raises(ProtocolError):
            parse_serial_line(line)

    def test_hold_previous_on_error(self):
        src = SerialMockSource(["R 30\n", "X 99\n", "R 40\n"])
        values = [s.distance_cm for s in src]
        assert values == [30.0, 30.0, 40.0]

    def test_out_of_range_before_first_good_line(self):
        src = SerialMockSource(["garbage\n", "R 25\n"])
        values = [s.distance_cm for s in src]
        assert values == [700.0, 25.0]


class TestDistanceSampleInvariant:
    @pytest.mark.parametrize("bad", [1.0, 451.0, 699.0, -3.0])
    def test_unclamped_values_rejected(self, bad):
        with pytest.raises(ValueError):
            DistanceSample(frame_t=1, distance_cm=bad)
