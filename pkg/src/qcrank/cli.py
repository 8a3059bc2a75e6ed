"""
Command-line frontend: encode / run / plan / app workflows.

All artifacts are deterministic given --seed: JSON is written with sorted
keys and no timestamps, so re-running a command reproduces byte-identical
reports. The default output directory comes from $QCRANK_OUT (else the
current directory).
"""
from __future__ import annotations

import csv
import json
import os
import re
from pathlib import Path

import click
import numpy as np

from . import apps, figures
from .core import Circuit, DataSequence, circuit_cx_depth
from .decoder import CalibrationTable, decode_qbart, decode_qcrank
from .encoder import EncodingConfig, build_qbart, build_qcrank
from .planner import shots_for_circuit
from .sim import NoiseModel, builtin_noise_models, noise_model_by_name, sample


def _out_dir(out: str | None) -> Path:
    path = Path(out or os.environ.get("QCRANK_OUT") or ".")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _load_values(in_path: str | None) -> list[int]:
    if in_path is None:
        raise click.ClickException("--in is required: JSON sequence of integers")
    data = json.loads(Path(in_path).read_text())
    values = data["values"] if isinstance(data, dict) else data
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise click.ClickException("input must be a JSON list of integers (or {'values': [...]})")
    return values


def _resolve_noise(name: str) -> NoiseModel:
    try:
        return noise_model_by_name(name)
    except KeyError as exc:
        raise click.ClickException(str(exc.args[0]))


def _build(mode: str, values: list[int], n_a: int, n_d: int, k: int) -> tuple[Circuit, EncodingConfig]:
    cfg = EncodingConfig(n_a, n_d, k if mode == "qcrank" else 2, mode)
    try:
        data = DataSequence(tuple(values), cfg.bit_depth)
        circ = build_qcrank(data, cfg) if mode == "qcrank" else build_qbart(data, cfg)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    return circ, cfg


@click.group()
def main() -> None:
    """Compile, simulate, and decode QCrank/QBArt data-encoding circuits."""


@main.command("encode")
@click.option("--mode", type=click.Choice(["qcrank", "qbart"]), default="qcrank", show_default=True)
@click.option("--na", "n_a", type=int, required=True, help="address qubits")
@click.option("--nd", "n_d", type=int, required=True, help="data qubits")
@click.option("--k", type=int, default=8, show_default=True, help="symbol count (qcrank)")
@click.option("--in", "in_path", type=click.Path(exists=True), help="input JSON sequence")
@click.option("--out", type=click.Path(), help="output directory")
def cmd_encode(mode, n_a, n_d, k, in_path, out):
    """Compile an input sequence into a circuit file plus layout metadata."""
    values = _load_values(in_path)
    circ, cfg = _build(mode, values, n_a, n_d, k)
    out_dir = _out_dir(out)
    (out_dir / "circuit.txt").write_text(circ.to_text())
    (out_dir / "circuit.qasm").write_text(circ.to_qasm())
    meta = {"mode": mode, "n_a": n_a, "n_d": n_d, "k": cfg.k,
            "width": circ.width, "cx_depth": circuit_cx_depth(circ),
            "values": values, "layout": cfg.layout().to_dict()}
    _write_json(out_dir / "encode.json", meta)
    click.echo(f"wrote circuit.txt/circuit.qasm/encode.json to {out_dir} "
               f"(width {circ.width}, CX depth {meta['cx_depth']})")


def _parse_sweep(spec: str) -> list[int]:
    m = re.fullmatch(r"shots=(\d+)\.\.(\d+)", spec)
    if not m:
        raise click.ClickException("--sweep must look like shots=100..32000")
    lo, hi = int(m.group(1)), int(m.group(2))
    if not 0 < lo <= hi:
        raise click.ClickException("sweep bounds must satisfy 0 < lo <= hi")
    points, s = [], lo
    while s < hi:
        points.append(s)
        s *= 2
    points.append(hi)
    return points


def _decode(mode, hist, cfg, values, table):
    if mode == "qcrank":
        return decode_qcrank(hist, cfg.k, len(values), table, truth=values)
    return decode_qbart(hist, len(values), truth=values)


@main.command("run")
@click.option("--mode", type=click.Choice(["qcrank", "qbart"]), default="qcrank", show_default=True)
@click.option("--na", "n_a", type=int, required=True)
@click.option("--nd", "n_d", type=int, required=True)
@click.option("--k", type=int, default=8, show_default=True)
@click.option("--shots", type=int, default=1000, show_default=True)
@click.option("--noise", default="ideal", show_default=True,
              help="one of: " + ", ".join(m.name for m in builtin_noise_models()))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--in", "in_path", type=click.Path(exists=True))
@click.option("--out", type=click.Path())
@click.option("--calib", type=click.Path(exists=True), help="calibration table JSON (qcrank)")
@click.option("--sweep", help="e.g. shots=100..32000: RVF sweep CSV + figure")
def cmd_run(mode, n_a, n_d, k, shots, noise, seed, in_path, out, calib, sweep):
    """Simulate an encoded sequence and decode it back, writing report files."""
    values = _load_values(in_path)
    model = _resolve_noise(noise)
    circ, cfg = _build(mode, values, n_a, n_d, k)
    table = CalibrationTable.from_json(Path(calib).read_text()) if calib else None
    out_dir = _out_dir(out)

    hist = sample(circ, shots, model, seed, cfg.layout())
    report = _decode(mode, hist, cfg, values, table)
    _write_json(out_dir / "histogram.json", hist.to_dict())
    _write_json(out_dir / "report.json", {
        "mode": mode, "noise": model.name, "seed": seed, "shots": shots,
        "cx_depth": circuit_cx_depth(circ), **report.to_dict()})
    click.echo(f"rvf={report.rvf:.4f} rsf={report.rsf:.1f} -> {out_dir / 'report.json'}")

    if sweep:
        rows = []
        for s in _parse_sweep(sweep):
            h = sample(circ, s, model, seed, cfg.layout())
            rows.append((s, _decode(mode, h, cfg, values, table).rvf))
        with open(out_dir / "sweep.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["shots", "rvf"])
            writer.writerows(rows)
        figures.sweep_figure(out_dir / "sweep.png", [r[0] for r in rows],
                             [r[1] for r in rows], f"{mode} / {model.name}")
        click.echo(f"sweep -> {out_dir / 'sweep.csv'}, {out_dir / 'sweep.png'}")


@main.command("plan")
@click.option("--addresses", "-l", type=int, required=True, help="sequence length L")
@click.option("--m-min", type=int, default=1, show_default=True)
@click.option("--f-circ", type=float, default=1e-3, show_default=True)
@click.option("--out", type=click.Path())
def cmd_plan(addresses, m_min, f_circ, out):
    """Poisson shot budget for covering every address at least m_min times."""
    try:
        plan = shots_for_circuit(addresses, m_min, f_circ)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    out_dir = _out_dir(out)
    _write_json(out_dir / "plan.json", plan.to_dict())
    click.echo(f"L={addresses} m_min={m_min} f_circ={f_circ:g}: "
               f"{plan.shots_per_address:.2f} shots/address, total {plan.total_shots}")


def _parse_codons(in_path: str | None):
    if in_path is None:
        return apps.dna_fixture()
    data = json.loads(Path(in_path).read_text())
    try:
        return ([apps.encode_codon(s) for s in data["seq_a"]],
                [apps.encode_codon(s) for s in data["seq_b"]])
    except (KeyError, ValueError) as exc:
        raise click.ClickException(f"bad codon input: {exc}")


@main.command("app")
@click.argument("name", type=click.Choice(["dna", "hamming", "conjugate", "image", "ecg"]))
@click.option("--na", "n_a", type=int, default=4, show_default=True)
@click.option("--nd", "n_d", type=int, default=8, show_default=True, help="data qubits (image)")
@click.option("--shots", type=int, default=None, help="per-app default if omitted")
@click.option("--noise", default="ideal", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--in", "in_path", type=click.Path(exists=True))
@click.option("--out", type=click.Path())
def cmd_app(name, n_a, n_d, shots, noise, seed, in_path, out):
    """Run one of the end-to-end application pipelines."""
    model = _resolve_noise(noise)
    out_dir = _out_dir(out)
    try:
        if name == "dna":
            seq_a, seq_b = _parse_codons(in_path)
            res = apps.run_dna_match(seq_a, seq_b, n_a, shots or 600, model, seed)
            payload = {"seq_a": [c.letters for c in seq_a],
                       "seq_b": [c.letters for c in seq_b],
                       "match_bits": res["match_bits"], "xor_bits": res["xor_bits"]}
        elif name == "hamming":
            values = _load_values(in_path) if in_path else list(range(8)) * 2
            res = apps.run_hamming(values, n_a, shots or 300, model, seed)
            payload = {"values": values, "weights": list(res["report"].recovered.values)}
        elif name == "conjugate":
            if in_path:
                raw = json.loads(Path(in_path).read_text())
                series = [apps.SignedPair(a, b) for a, b in raw["series"]]
            else:
                series = apps.sample_complex_series()
            res = apps.run_conjugate(series, shots or 1000, model, seed)
            payload = {"series": [[p.a, p.b] for p in series],
                       "conjugated": [list(p) for p in res["decoded"]]}
        elif name == "image":
            pixels = apps.read_pbm(in_path) if in_path else apps.demo_image()
            recovered, report = apps.image_roundtrip(
                pixels, n_a, n_d, noise=model, shots=shots or 7000, seed=seed)
            accuracy = apps.pixel_accuracy(pixels, recovered)
            apps.write_pbm(out_dir / "input.pbm", pixels)
            apps.write_pbm(out_dir / "recovered.pbm", recovered)
            figures.image_comparison_figure(out_dir / "image.png", pixels,
                                            recovered, accuracy)
            _write_json(out_dir / "report.json", {
                "app": "image", "noise": model.name, "seed": seed,
                "pixel_accuracy": accuracy, **report.to_dict()})
            click.echo(f"pixel accuracy {accuracy:.1%} -> {out_dir / 'report.json'}, "
                       f"{out_dir / 'recovered.pbm'}, {out_dir / 'image.png'}")
            return
        else:  # ecg
            if in_path:
                wave = np.array(json.loads(Path(in_path).read_text())["wave"], dtype=float)
            else:
                wave = apps.synthetic_ecg()
            res = apps.run_ecg(wave, shots or 2000, model, seed)
            figures.ecg_figure(out_dir / "ecg.png", res["truth"], res["recovered"])
            payload = {"digitized": res["truth"], "recovered": res["recovered"],
                       "figure": "ecg.png"}
    except ValueError as exc:
        raise click.ClickException(str(exc))
    report = res["report"]
    _write_json(out_dir / "report.json", {
        "app": name, "noise": model.name, "seed": seed, **payload, **report.to_dict()})
    click.echo(f"{name}: rvf={report.rvf:.4f} -> {out_dir / 'report.json'}"
               + (f", {out_dir / 'ecg.png'}" if name == "ecg" else ""))


if __name__ == "__main__":
    main()
