"""Command-line front end: batch runs, golden scenario checks, curve
fitting, and the live service."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import engine, sensor, service
from .behavior import Dominance
from .engine import LiveSession, ScenarioConfig
from .proxemics import CrossingConstraint, FitError, fit_curve, load_profiles

CONFIG_ENV_VAR = "AVOIDSIM_PROFILES"

# Golden scenarios: (relationship, distance_cm, frames, expected first crossing).
GOLDEN_SCENARIOS = [
    ("friend", 30.0, 20, 7),
    ("friend", 10.0, 20, 3),
    ("acquaintance", 30.0, 200, None),
    ("acquaintance", 20.0, 30, 11),
    ("acquaintance", 10.0, 20, 7),
]


def _load_profiles_from_flags(config_path):
    path = config_path or os.environ.get(CONFIG_ENV_VAR)
    return load_profiles(path)


def parse_source(spec: str, frames: int):
    """Mini-language: const:30, ramp:100:10, sin:center:amp:period_s,
    trace:path, serial:path."""
    kind, _, rest = spec.partition(":")
    kind = kind.lower()
    try:
        if kind == "const":
            return sensor.synthetic("constant", {"value": float(rest)}, frames)
        if kind == "ramp":
            start, end = rest.split(":")
            return sensor.synthetic(
                "ramp", {"start": float(start), "end": float(end)}, frames
            )
        if kind == "sin":
            center, amplitude, period_s = rest.split(":")
            return sensor.synthetic(
                "sinusoid",
                {
                    "center": float(center),
                    "amplitude": float(amplitude),
                    "period_frames": float(period_s) * 1000 / sensor.FRAME_PERIOD_MS,
                },
                frames,
            )
        if kind == "trace":
            return sensor.read_trace(rest)
        if kind == "serial":
            with open(rest) as f:
                return list(sensor.SerialMockSource(f.readlines()))
    except (ValueError, OSError) as exc:
        raise click.ClickException(f"bad source {spec!r}: {exc}") from exc
    raise click.ClickException(f"unknown source kind {kind!r}")


def _build_config(profiles, relationship, e_th, e_max, c, refractory, frames):
    profile = profiles[relationship]
    overrides = {}
    if e_th is not None:
        overrides["e_th"] = e_th
    if e_max is not None:
        overrides["e_max"] = e_max
    if c is not None:
        overrides["decay_c"] = c
    if overrides:
        from dataclasses import replace

        profile = replace(profile, **overrides)
    return ScenarioConfig(
        profile=profile, refractory_frames=refractory, max_frames=frames
    )


@click.group()
def main():
    """Simulate a robot's dislike accumulation and avoidance behavior."""


@main.command("run")
@click.option("--relationship", default="friend", show_default=True,
              type=click.Choice(["stranger", "acquaintance", "friend", "partner"]))
@click.option("--source", "source_spec", default="const:30", show_default=True,
              help="const:CM | ramp:FROM:TO | sin:CENTER:AMP:PERIOD_S | "
                   "trace:PATH | serial:PATH")
@click.option("--frames", default=100, show_default=True, type=int)
@click.option("--dominance", type=click.Choice(["Low", "Medium", "High"]))
@click.option("--e-th", type=float, help="override tolerance threshold")
@click.option("--e-max", type=float, help="override maximum admissible dislike")
@click.option("--decay-c", "c", type=float, help="override decay factor")
@click.option("--refractory", default=10, show_default=True, type=int)
@click.option("--profiles-config", type=click.Path(exists=True),
              help=f"profile JSON (or ${CONFIG_ENV_VAR})")
@click.option("--out", "out_dir", type=click.Path(), default="out",
              show_default=True)
def cmd_run(relationship, source_spec, frames, dominance, e_th, e_max, c,
            refractory, profiles_config, out_dir):
    """Run one scenario; write events.ndjson, timeline.csv, summary.json."""
    profiles = _load_profiles_from_flags(profiles_config)
    config = _build_config(profiles, relationship, e_th, e_max, c, refractory, frames)
    source = parse_source(source_spec, frames)
    dom = Dominance(dominance) if dominance else None
    events = engine.run(config, source, dominance=dom)
    summary = engine.summarize(events)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    engine.write_ndjson(events, out / "events.ndjson")
    engine.write_csv(events, out / "timeline.csv")
    with open(out / "summary.json", "w") as f:
        json.dump(summary, f, indent=2)
        f.write("\n")

    click.echo(f"frames={summary['frames']} "
               f"first_crossing={summary['first_crossing']} "
               f"avoidance_count={summary['avoidance_count']} "
               f"max_s={summary['max_s']:.4f}")


@main.command("check")
@click.option("--profiles-config", type=click.Path(exists=True))
@click.option("--e-th", type=float, help="override e_th for every scenario")
@click.option("--decay-c", "c", type=float, help="override decay factor")
def cmd_check(profiles_config, e_th, c):
    """Run the five golden constant-distance scenarios and report pass/fail."""
    profiles = _load_profiles_from_flags(profiles_config)
    all_ok = True
    click.echo(f"{'relationship':<14} {'d_cm':>5} {'expected':>9} {'got':>6} result")
    for relationship, d_cm, frames, expected in GOLDEN_SCENARIOS:
        config = _build_config(profiles, relationship, e_th, None, c, 10, frames)
        source = sensor.synthetic("constant", {"value": d_cm}, frames)
        events = engine.run(config, source)
        got = engine.summarize(events)["first_crossing"]
        ok = got == expected
        all_ok &= ok
        click.echo(
            f"{relationship:<14} {d_cm:>5.0f} {str(expected):>9} {str(got):>6} "
            f"{'PASS' if ok else 'FAIL'}"
        )
    sys.exit(0 if all_ok else 1)


@main.command("fit")
@click.option("--anchor", "anchors", multiple=True, required=True,
              help="D_CM:N pair, repeatable")
@click.option("--constraint", "constraints", multiple=True,
              help="D_CM:C:E_TH:T_STAR first-crossing constraint, repeatable")
def cmd_fit(anchors, constraints):
    """Fit dislike curve constants (a, b) to anchors and crossing constraints."""
    try:
        anchor_pairs = []
        for spec in anchors:
            d, n = spec.split(":")
            anchor_pairs.append((float(d), float(n)))
        cons = []
        for spec in constraints:
            d, c, e_th, t_star = spec.split(":")
            cons.append(CrossingConstraint(float(d), float(c), float(e_th), int(t_star)))
    except ValueError as exc:
        raise click.ClickException(f"bad flag value: {exc}") from exc
    try:
        curve = fit_curve(anchor_pairs, cons)
    except FitError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"a = {curve.a:.6g}")
    click.echo(f"b = {curve.b:.6g} /cm")
    click.echo(f"{'d_cm':>8} {'anchor_n':>9} {'fitted_n':>9}")
    for d, n in anchor_pairs:
        click.echo(f"{d:>8.1f} {n:>9.4f} {curve.evaluate(d):>9.4f}")


@main.command("serve")
@click.option("--host", default=service.DEFAULT_HOST, show_default=True)
@click.option("--port", default=service.DEFAULT_PORT, show_default=True, type=int)
@click.option("--relationship", default="friend", show_default=True,
              type=click.Choice(["stranger", "acquaintance", "friend", "partner"]))
@click.option("--dominance", type=click.Choice(["Low", "Medium", "High"]))
@click.option("--profiles-config", type=click.Path(exists=True))
def cmd_serve(host, port, relationship, dominance, profiles_config):
    """Start the live engine and the NDJSON control/streaming socket."""
    profiles = _load_profiles_from_flags(profiles_config)
    config = ScenarioConfig(profile=profiles[relationship])
    dom = Dominance(dominance) if dominance else None
    session = LiveSession(config, profiles=profiles, dominance=dom)
    try:
        server = service.EngineServer(session, host=host, port=port)
    except OSError as exc:
        raise click.ClickException(f"cannot bind {host}:{port}: {exc}") from exc
    click.echo(f"listening on {server.address[0]}:{server.address[1]}")
    server.serve_forever()


if __name__ == "__main__":
    main()
