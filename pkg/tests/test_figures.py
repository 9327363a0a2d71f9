"""Figure rendering writes real PNG files."""

import finring as fr
import finring.suite as fs
from finring.figures import render_lattice_figure, render_verdict_grid

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def test_render_verdict_grid(tmp_path):
    report = fs.run_suite(fs.SuiteConfig(catalog=("Z/6", "GF(4)")))
    out = tmp_path / "grid.png"
    got = render_verdict_grid(report, out)
    assert got == out
    assert out.read_bytes()[:8] == PNG_MAGIC
    assert out.stat().st_size > 1000


def test_render_lattice_figure(tmp_path):
    ext = fr.canonical_idealization_extension(fr.zmod(4))
    out = tmp_path / "hasse.png"
    got = render_lattice_figure(ext, out)
    assert got == out
    assert out.read_bytes()[:8] == PNG_MAGIC
