import subprocess
import sys

import numpy as np
import pytest

from rsadapt.cli import _parse_sweep, build_parser, main
from rsadapt.galois import GaloisField
from rsadapt.harness import CSV_HEADER
from rsadapt.report import read_sweep_csv, write_gnuplot_script
from rsadapt.rscode import RSCodeSpec, random_codeword, symbols_to_bits


def test_parse_sweep_forms():
    assert _parse_sweep("3:0.5:4") == (3.0, 3.5, 4.0)
    assert _parse_sweep("2.5") == (2.5,)
    assert _parse_sweep("1,2,4.5") == (1.0, 2.0, 4.5)
    with pytest.raises(Exception):
        _parse_sweep("4:-1:3")


def test_parser_rejects_malformed_code():
    ap = build_parser()
    with pytest.raises(SystemExit):
        ap.parse_args(["simulate", "--code", "31", "--snr", "4",
                       "--out", "x.csv"])


def test_simulate_writes_csv_figure_and_script(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    rc = main(["simulate", "--code", "15,11", "--variant", "hdd",
               "--snr", "4:1:5", "--max-frames", "200",
               "--min-errors", "20", "--seed", "1", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3
    assert out.with_suffix(".png").exists()
    gp = out.with_suffix(".gp").read_text()
    assert "logscale y" in gp and out.name in gp
    assert "dB" in capsys.readouterr().out

    table = read_sweep_csv(out)
    assert [row["ebn0_db"] for row in table] == [4.0, 5.0]


def test_simulate_no_fig_skips_png(tmp_path):
    out = tmp_path / "s.csv"
    rc = main(["simulate", "--code", "15,11", "--variant", "hdd",
               "--snr", "5", "--max-frames", "50", "--min-errors", "5",
               "--seed", "1", "--out", str(out), "--no-fig"])
    assert rc == 0
    assert out.exists()
    assert out.with_suffix(".gp").exists()
    assert not out.with_suffix(".png").exists()


def test_simulate_decoder_flags_accepted(tmp_path):
    out = tmp_path / "v.csv"
    rc = main(["simulate", "--code", "15,11", "--variant", "adp-hdd",
               "--alpha", "0.2", "--n1", "3", "--n2", "2", "--minsum",
               "--red", "4", "--no-deg2", "--genie", "--group-size", "2",
               "--snr", "5", "--max-frames", "30", "--min-errors", "5",
               "--seed", "2", "--out", str(out), "--no-fig"])
    assert rc == 0


def test_simulate_field_poly_override(tmp_path):
    out = tmp_path / "p.csv"
    rc = main(["simulate", "--code", "15,11", "--field-poly", "13",
               "--variant", "hdd", "--snr", "5", "--max-frames", "30",
               "--min-errors", "5", "--seed", "3", "--out", str(out),
               "--no-fig"])
    assert rc == 0


def test_trace_subcommand(tmp_path):
    out = tmp_path / "trace.csv"
    rc = main(["trace", "--code", "15,11", "--snr", "3.0", "--frames", "4",
               "--variant", "adp", "--n1", "5", "--seed", "4",
               "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "frame,iteration,variant,J"
    variants = {line.split(",")[2] for line in lines[1:]}
    assert variants == {"adp", "spa-noadapt"}
    assert out.with_suffix(".png").exists()


def test_decode_subcommand_noiseless(tmp_path, capsys):
    spec = RSCodeSpec(GaloisField(4), 15, 11)
    tx = symbols_to_bits(random_codeword(spec, np.random.default_rng(5)), 4)
    llr = (1.0 - 2.0 * tx.astype(float)) * 6.0
    infile = tmp_path / "llr.txt"
    infile.write_text("\n".join(f"{v}" for v in llr))
    rc = main(["decode", "--code", "15,11", "--in", str(infile),
               "--variant", "adp", "--n1", "5", "--alpha", "0.5"])
    assert rc == 0
    got = capsys.readouterr().out
    assert "status: converged" in got
    hexline = [l for l in got.splitlines() if l.startswith("bits:")][0]
    unpacked = np.unpackbits(
        np.frombuffer(bytes.fromhex(hexline.split()[1]), dtype=np.uint8))
    assert np.array_equal(unpacked[: spec.n], tx)
    assert "iteration,J" in got


def test_decode_trace_out_and_length_check(tmp_path):
    infile = tmp_path / "bad.txt"
    infile.write_text("1.0 2.0 3.0")
    rc = main(["decode", "--code", "15,11", "--in", str(infile)])
    assert rc == 1  # wrong LLR count surfaces as a clean error

    spec = RSCodeSpec(GaloisField(4), 15, 11)
    tx = symbols_to_bits(random_codeword(spec, np.random.default_rng(6)), 4)
    good = tmp_path / "good.txt"
    good.write_text(" ".join("inf" if b == 0 else "-inf" for b in tx))
    tr = tmp_path / "tr.csv"
    rc = main(["decode", "--code", "15,11", "--in", str(good),
               "--variant", "adp", "--trace-out", str(tr)])
    assert rc == 0
    assert tr.read_text().startswith("iteration,J")


def test_plot_subcommand(tmp_path):
    a = tmp_path / "a.csv"
    a.write_text(CSV_HEADER + "\n4,100,10,40,0.1,0.01,1,0.5\n"
                 "5,100,1,4,0.01,0.001,1,0.5\n")
    out = tmp_path / "fig.png"
    rc = main(["plot", str(a), "--out", str(out), "--labels", "ref"])
    assert rc == 0
    assert out.exists() and out.with_suffix(".gp").exists()

    rc = main(["plot", str(a), "--out", str(out), "--labels", "x,y"])
    assert rc == 1  # label count mismatch


def test_invalid_alpha_is_clean_error(tmp_path, capsys):
    out = tmp_path / "x.csv"
    rc = main(["simulate", "--code", "15,11", "--alpha", "1.5",
               "--snr", "5", "--max-frames", "10", "--min-errors", "5",
               "--out", str(out)])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_gnuplot_script_lists_every_csv(tmp_path):
    files = []
    for name in ("one.csv", "two.csv"):
        p = tmp_path / name
        p.write_text(CSV_HEADER + "\n4,10,1,2,0.1,0.05,1,0.1\n")
        files.append(p)
    gp = tmp_path / "fig.gp"
    write_gnuplot_script(files, gp, labels=["a", "b"])
    text = gp.read_text()
    assert "one.csv" in text and "two.csv" in text
    assert "set datafile separator" in text


def test_module_entry_point_help():
    proc = subprocess.run([sys.executable, "-m", "rsadapt.cli", "--help"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "simulate" in proc.stdout and "decode" in proc.stdout
