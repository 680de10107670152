import io

import pytest

from multigain.errors import InsufficientData, IoError
from multigain.svg import render_svg


def _render(series, title="t"):
    buf = io.BytesIO()
    render_svg(series, title, buf)
    return buf.getvalue()


def test_two_series_two_polylines():
    xs = list(range(10, 31))
    doc = _render([("a", xs, [x * 2.0 for x in xs]), ("b", xs, [x * 1.5 for x in xs])]).decode()
    assert doc.count("<polyline") == 2
    assert doc.startswith("<svg") and doc.rstrip().endswith("</svg>")


def test_deterministic():
    series = [("a", [1, 2, 3], [0.5, 2.5, 1.0]), ("b", [1, 2, 3], [1, 1, 1])]
    assert _render(series) == _render(series)


def test_title_is_escaped():
    doc = _render([("x<y", [0, 1], [0, 1])], title="a & b").decode()
    assert "a &amp; b" in doc and "x&lt;y" in doc


@pytest.mark.parametrize("series", [[], [("a", [1], [1])], [("a", [1, 2], [1])]])
def test_insufficient(series):
    with pytest.raises(InsufficientData):
        _render(series)


def test_write_failure():
    class Broken(io.BytesIO):
        def write(self, _):
            raise OSError("disk full")

    with pytest.raises(IoError):
        render_svg([("a", [0, 1], [0, 1])], "t", Broken())
