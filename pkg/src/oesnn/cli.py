"""Command-line interface: single-formula evaluation, figure datasets,
simulation runs, path-formula validation, and memory benchmarking.

Verbs::

    calc FORMULA --param value ...   evaluate one closed-form model
    figure ID [--set key=value ...]  write one bundled figure dataset
    simulate --config PATH|NAME      run a scenario, write spikes + ledger
    validate-eq6 --n N --k K         empirical check of the degree/path model
    membench [--tech FILE]           score memory technologies

Exit codes: 0 success, 2 usage error, 3 scenario validation error.  The
default output directory is $OESNN_OUT or ./out.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .config import build_scenario, load_scenario
from .datasets import Dataset
from .errors import ConfigError, DomainError
from .figures import FIGURES, build_figure
from .linkbudget import (
    OpticalLink,
    ReceiverlessPhotodiode,
    implied_photon_count,
    link_source_energy,
    miss_probability,
    photodiode_static_power,
    photons_for_reliability,
    receiverless_optical_energy,
    snspd_reset_energy,
    static_dominance_frequency,
    transmitter_power,
)
from .membench import (
    DEFAULT_ASSUMPTIONS,
    SystemAssumptions,
    lifetime_updates,
    load_technologies,
    max_update_energy,
    score_technology,
    targets,
)
from .netgen import validate_path_model
from .platforms import (
    PROFILES,
    carnot_specific_power,
    cmos_max_time_constant,
    dpi_time_constant,
    fluxon_budget,
    max_average_spike_rate,
    power_density_spike_limit,
    sc_max_time_constant,
    squid_from_critical_current,
    CmosTimeConstantSpec,
    ScTimeConstantSpec,
)
from .quantities import Quantity
from .scaling import achievable_path_length, electronic_area, photonic_area, required_degree, required_planes
from .simulator import power_report, run

USAGE_EXIT = 2
VALIDATION_EXIT = 3


class UsageError(Exception):
    pass


def _out_dir(arg: str | None) -> Path:
    path = Path(arg or os.environ.get("OESNN_OUT", "out"))
    path.mkdir(parents=True, exist_ok=True)
    return path


# ---------------------------------------------------------------------------
# calc


@dataclass(frozen=True)
class Formula:
    summary: str
    params: dict[str, tuple[float | None, str]]  # name -> (default or None=required, help)
    compute: callable


def _singleton(label):
    def wrap(fn):
        def compute(p):
            return {label: fn(p)}

        return compute

    return wrap


FORMULAS: dict[str, Formula] = {
    "eq1": Formula(
        "single-photon receiver miss probability exp(-nph*etad)",
        {"nph": (None, "mean photons at the receiver"), "etad": (None, "detection efficiency")},
        _singleton("miss_probability")(lambda p: miss_probability(p["nph"], p["etad"])),
    ),
    "photons": Formula(
        "mean photons needed for a detection reliability",
        {"p": (None, "required detection probability"), "etad": (None, "detection efficiency")},
        _singleton("photons")(lambda p: photons_for_reliability(p["p"], p["etad"])),
    ),
    "eq2": Formula(
        "per-spike source optical energy nph*h*nu/eta",
        {
            "nph": (None, "mean photons at the receiver"),
            "wavelength": (1.5e-6, "wavelength in metres"),
            "eta": (1.0, "end-to-end link efficiency"),
        },
        _singleton("source_energy")(lambda p: link_source_energy(p["nph"], p["wavelength"], p["eta"])),
    ),
    "eq3": Formula(
        "receiverless photodiode per-spike source energy C*V/(eta*R)",
        {
            "ctot": (1e-15, "total capacitance in farads"),
            "v": (0.8, "switching voltage"),
            "eta": (1.0, "end-to-end link efficiency"),
            "wavelength": (1.5e-6, "wavelength in metres"),
            "responsivity": (0.0, "A/W; 0 uses the quantum-limited value"),
        },
        lambda p: (
            lambda pd: {
                "source_energy": receiverless_optical_energy(pd, p["eta"], p["wavelength"]),
                "photons_at_receiver": implied_photon_count(pd, p["wavelength"]),
            }
        )(
            ReceiverlessPhotodiode(
                c_tot=p["ctot"],
                v_swing=p["v"],
                responsivity=p["responsivity"] or None,
            )
        ),
    ),
    "reset-energy": Formula(
        "nanowire detector reset energy L*I^2/2",
        {"l": (100e-9, "kinetic inductance in henries"), "i": (10e-6, "bias current in amperes")},
        _singleton("reset_energy")(lambda p: snspd_reset_energy(p["l"], p["i"])),
    ),
    "static-power": Formula(
        "photodiode static dissipation V_bias*I_leak",
        {"vbias": (1.0, "bias voltage"), "ileak": (1e-9, "leakage current in amperes")},
        _singleton("static_power")(
            lambda p: photodiode_static_power(ReceiverlessPhotodiode(v_bias=p["vbias"], i_leak=p["ileak"]))
        ),
    ),
    "static-crossover": Formula(
        "spike rate below which photodiode leakage dominates the link energy",
        {
            "vbias": (1.0, "bias voltage"),
            "ileak": (1e-9, "leakage current in amperes"),
            "ctot": (1e-15, "total capacitance in farads"),
            "v": (0.8, "switching voltage"),
            "eta": (0.01, "end-to-end link efficiency"),
            "wavelength": (1.5e-6, "wavelength in metres"),
        },
        lambda p: (
            lambda pd: {
                "crossover_rate": static_dominance_frequency(
                    pd, OpticalLink(wavelength=p["wavelength"], eta=p["eta"], receiver=pd)
                )
            }
        )(ReceiverlessPhotodiode(c_tot=p["ctot"], v_swing=p["v"], v_bias=p["vbias"], i_leak=p["ileak"])),
    ),
    "tx-power": Formula(
        "transmitter optical power fanout*E_receiver*rate/eta",
        {
            "fanout": (1000.0, "downstream synapses"),
            "energy": (None, "per-synapse receiver energy in joules"),
            "rate": (None, "spike rate in hertz"),
            "eta": (1.0, "end-to-end link efficiency"),
        },
        _singleton("optical_power")(
            lambda p: transmitter_power(p["fanout"], p["energy"], p["rate"], p["eta"])
        ),
    ),
    "eq4": Formula(
        "lifetime weight updates L*f/sqrt(N)",
        {
            "lifetime": (1e9, "system lifetime in seconds"),
            "rate": (10e3, "mean spike rate in hertz"),
            "fanin": (1000.0, "synapses per neuron"),
        },
        _singleton("lifetime_updates")(
            lambda p: lifetime_updates(
                SystemAssumptions(lifetime=p["lifetime"], mean_rate=p["rate"], fanin=p["fanin"])
            )
        ),
    ),
    "eq5": Formula(
        "largest per-write energy sqrt(N)*E_opt",
        {"fanin": (1000.0, "synapses per neuron"), "eopt": (100e-15, "per-spike optical energy in joules")},
        _singleton("max_update_energy")(
            lambda p: max_update_energy(SystemAssumptions(fanin=p["fanin"], e_opt=p["eopt"]))
        ),
    ),
    "eq6": Formula(
        "mean degree for a target path length",
        {"n": (None, "network size"), "L": (None, "target mean path length")},
        _singleton("degree")(lambda p: required_degree(p["n"], p["L"])),
    ),
    "path-length": Formula(
        "mean path length at a given degree",
        {"n": (None, "network size"), "k": (None, "mean degree")},
        _singleton("path_length")(lambda p: achievable_path_length(p["n"], p["k"])),
    ),
    "eq7": Formula(
        "per-neuron waveguide routing area (k*w_wg/p_p)^2",
        {"k": (None, "degree"), "wwg": (2e-6, "waveguide pitch in metres"), "pp": (1.0, "photonic planes")},
        _singleton("photonic_area")(lambda p: photonic_area(p["k"], p["wwg"], p["pp"])),
    ),
    "eq8": Formula(
        "per-neuron synapse circuit area k*w_sy^2/p_e",
        {"k": (None, "degree"), "wsy": (10e-6, "synapse width in metres"), "pe": (1.0, "electronic planes")},
        _singleton("electronic_area")(lambda p: electronic_area(p["k"], p["wsy"], p["pe"])),
    ),
    "planes": Formula(
        "photonic/electronic plane counts for a wafer population",
        {
            "n": (None, "neurons per wafer"),
            "L": (2.5, "target mean path length"),
            "wwg": (2e-6, "waveguide pitch in metres"),
            "wsy": (10e-6, "synapse width in metres"),
            "d": (0.3, "wafer diameter in metres"),
            "fill": (1.0, "usable area fraction"),
        },
        lambda p: (
            lambda req: {"degree": req.degree, "p_p": req.p_p, "p_e": req.p_e}
        )(required_planes(p["n"], p["L"], p["wwg"], p["wsy"], p["d"], p["fill"])),
    ),
    "squid": Formula(
        "interference-loop size and two-fluxon energy from junction current",
        {"ic": (300e-6, "junction critical current in amperes")},
        lambda p: (
            lambda s: {"w_sq": s.w_sq, "e_sq": s.e_sq, "l_sq": s.l_sq}
        )(squid_from_critical_current(p["ic"])),
    ),
    "fluxons": Formula(
        "fluxons producible per synapse event inside an energy budget",
        {"ebudget": (100e-18, "energy budget in joules"), "ic": (300e-6, "junction critical current")},
        _singleton("fluxons")(lambda p: fluxon_budget(p["ebudget"], p["ic"])),
    ),
    "carnot": Formula(
        "thermodynamic refrigeration floor (T_hot-T_cold)/T_cold",
        {"thot": (300.0, "ambient temperature in kelvin"), "tcold": (4.2, "cold-stage temperature in kelvin")},
        _singleton("specific_power")(lambda p: carnot_specific_power(p["thot"], p["tcold"])),
    ),
    "wall": Formula(
        "wall power (or energy) for a cold dissipation",
        {"cold": (None, "cold-stage power in watts"), "specific": (1000.0, "refrigeration W per W")},
        _singleton("wall_power")(
            lambda p: Quantity(p["cold"] * p["specific"], (2, 1, -3, 0, 0))
        ),
    ),
    "max-rate": Formula(
        "budget-limited mean spike rate P/(N*fanout*E)",
        {
            "budget": (10e6, "wall power budget in watts"),
            "n": (None, "neuron count"),
            "fanout": (1000.0, "synapses per neuron"),
            "e": (None, "wall energy per synapse event in joules"),
        },
        _singleton("max_rate")(lambda p: max_average_spike_rate(p["budget"], p["n"], p["fanout"], p["e"])),
    ),
    "density-rate": Formula(
        "spike rate at the areal heat-removal ceiling",
        {
            "wsy": (None, "synapse width in metres"),
            "e": (None, "on-chip energy per synapse event in joules"),
            "limit": (1e4, "power density limit in W/m^2"),
        },
        _singleton("rate_limit")(lambda p: power_density_spike_limit(p["wsy"], p["e"], p["limit"])),
    ),
    "tau-dpi": Formula(
        "leaky-integrator time constant C*V_th/(kappa*I_tau)",
        {
            "c": (None, "capacitance in farads"),
            "vth": (25e-3, "thermal voltage"),
            "kappa": (1.0, "subthreshold slope factor"),
            "itau": (10e-15, "leak current in amperes"),
        },
        _singleton("tau")(lambda p: dpi_time_constant(p["c"], p["vth"], p["kappa"], p["itau"])),
    ),
    "tau-cmos": Formula(
        "largest CMOS time constant in a synapse footprint",
        {
            "w": (None, "synapse width in metres"),
            "cdensity": (0.02, "capacitor density in F/m^2"),
            "vth": (25e-3, "thermal voltage"),
            "kappa": (1.0, "subthreshold slope factor"),
            "itau": (10e-15, "leak current in amperes"),
        },
        _singleton("tau")(
            lambda p: cmos_max_time_constant(
                p["w"],
                CmosTimeConstantSpec(c_density=p["cdensity"], v_th=p["vth"], kappa=p["kappa"], i_tau=p["itau"]),
            )
        ),
    ),
    "tau-sc": Formula(
        "largest superconducting L/r time constant in a synapse footprint",
        {
            "w": (None, "synapse width in metres"),
            "lsq": (160e-12, "inductance per square in henries"),
            "rs": (1e-3, "sheet resistance in ohms per square"),
            "wwire": (100e-9, "wire width in metres"),
            "wgap": (100e-9, "gap width in metres"),
        },
        _singleton("tau")(
            lambda p: sc_max_time_constant(
                p["w"], ScTimeConstantSpec(l_square=p["lsq"], r_s=p["rs"], w_wire=p["wwire"], w_gap=p["wgap"])
            )
        ),
    ),
}


def _parse_calc_params(formula: Formula, tokens: list[str]) -> tuple[dict, str]:
    expected = ", ".join(
        f"--{name} ({'required' if default is None else f'default {default!r}'}: {doc})"
        for name, (default, doc) in formula.params.items()
    )
    values = {name: default for name, (default, _) in formula.params.items()}
    fmt = "text"
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}; expected parameters: {expected}")
        key = tok[2:]
        if i + 1 >= len(tokens):
            raise UsageError(f"missing value for --{key}")
        raw = tokens[i + 1]
        i += 2
        if key == "format":
            if raw not in ("text", "json"):
                raise UsageError("--format must be text or json")
            fmt = raw
            continue
        if key not in formula.params:
            raise UsageError(f"unknown parameter --{key}; expected parameters: {expected}")
        try:
            values[key] = float(raw)
        except ValueError:
            raise UsageError(f"--{key} expects a number, got {raw!r}") from None
    missing = [k for k, v in values.items() if v is None]
    if missing:
        raise UsageError(
            f"missing required parameter(s): {', '.join('--' + m for m in missing)}; expected: {expected}"
        )
    return values, fmt


def _result_entry(value) -> dict:
    if isinstance(value, Quantity):
        return {"value": value.value, "unit": value.unit}
    return {"value": float(value), "unit": "-"}


def cmd_calc(args) -> int:
    if args.formula not in FORMULAS:
        known = "\n".join(f"  {name:17s} {f.summary}" for name, f in sorted(FORMULAS.items()))
        raise UsageError(f"unknown formula {args.formula!r}; available formulas:\n{known}")
    formula = FORMULAS[args.formula]
    params, fmt = _parse_calc_params(formula, args.params)
    results = formula.compute(params)
    if fmt == "json":
        doc = {
            "formula": args.formula,
            "params": params,
            "results": {k: _result_entry(v) for k, v in results.items()},
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for label, value in results.items():
            entry = _result_entry(value)
            unit = "" if entry["unit"] == "-" else f" {entry['unit']}"
            print(f"{label} = {entry['value']:.6g}{unit}")
    return 0


# ---------------------------------------------------------------------------
# figure


def _parse_override(token: str):
    if "=" not in token:
        raise UsageError(f"--set expects key=value, got {token!r}")
    key, raw = token.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    if isinstance(value, list):
        value = tuple(value)
    return key, value


def cmd_figure(args) -> int:
    overrides = dict(_parse_override(t) for t in args.set or [])
    try:
        dataset = build_figure(args.id, **overrides)
    except TypeError as exc:
        raise UsageError(f"invalid override for {args.id}: {exc}") from None
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    out = _out_dir(args.out)
    path = out / f"{args.id}.{args.format}"
    if args.format == "csv":
        dataset.write_csv(path)
    else:
        dataset.write_json(path)
    print(path)
    return 0


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args) -> int:
    doc = load_scenario(args.config)
    if args.seed is not None:
        doc["seed"] = args.seed
    if args.profile is not None:
        doc["profile"] = args.profile
    graph, config = build_scenario(doc)
    spikes, ledger, report = run(graph, config)
    out = _out_dir(args.out)
    spikes_path = out / "spikes.csv"
    ledger_path = out / "ledger.json"
    spikes.write_csv(spikes_path)
    summary = power_report(
        ledger,
        config.duration,
        config.profile,
        n_synapses=graph.edge_count,
        n_neurons=graph.n,
        budget=args.budget,
        fanout=graph.edge_count / graph.n if graph.n else None,
    )
    doc_out = {
        "scenario": doc.get("name", args.config),
        "seed": config.seed,
        "profile": config.profile.name,
        "energy": ledger.as_dict(config.profile),
        "synapse_report": report.as_dict(),
        "power": summary.as_dict(),
    }
    with open(ledger_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(json.dumps(doc_out, sort_keys=True, indent=2) + "\n")
    mean_rate = len(spikes) / (graph.n * config.duration)
    print(f"spikes: {len(spikes)} (mean rate {mean_rate:.6g} Hz over {graph.n} neurons)")
    print(f"wall power: {summary.wall_power:.6g} W (cold {summary.cold_power:.6g} W)")
    if summary.budget_utilization is not None:
        print(f"budget utilization: {summary.budget_utilization:.3f}")
    print(spikes_path)
    print(ledger_path)
    return 0


# ---------------------------------------------------------------------------
# validate-eq6


def cmd_validate(args) -> int:
    rows = validate_path_model(
        args.n,
        args.k,
        seeds=args.seeds,
        base_seed=args.seed,
        tolerance=args.tolerance,
        sample_sources=args.sample_sources,
    )
    columns = (
        "n",
        "degree",
        "seeds",
        "predicted",
        "empirical_mean",
        "rel_error",
        "min_reachable_fraction",
        "within_tolerance",
    )
    dataset = Dataset(
        name="path-model-validation",
        columns=columns,
        rows=[tuple(r[c] for c in columns) for r in rows],
        provenance={
            "figure": None,
            "version": __version__,
            "seed": args.seed,
            "parameters": {
                "n": args.n,
                "k": args.k,
                "seeds": args.seeds,
                "tolerance": args.tolerance,
            },
        },
    )
    if args.out is not None:
        out = _out_dir(args.out)
        path = out / "path-model-validation.csv"
        dataset.write_csv(path)
        print(path)
    header = " ".join(f"{c:>22s}" for c in columns)
    print(header)
    for row in dataset.rows:
        print(" ".join(f"{v:>22.6g}" if isinstance(v, float) else f"{v:>22d}" for v in row))
    return 0


# ---------------------------------------------------------------------------
# membench


def cmd_membench(args) -> int:
    assumptions = SystemAssumptions(
        lifetime=args.lifetime,
        mean_rate=args.mean_rate,
        fanin=args.fanin,
        e_opt=args.eopt,
        max_rate=args.max_rate,
    )
    techs = load_technologies(args.tech)
    if args.name:
        techs = [t for t in techs if t.name == args.name]
        if not techs:
            raise UsageError(f"no technology named {args.name!r} in the table")
    t = targets(assumptions)
    reports = [score_technology(tech, assumptions) for tech in techs]
    if args.format == "json":
        doc = {
            "targets": {
                "endurance": t.endurance,
                "update_energy": t.update_energy,
                "update_time": t.update_time,
                "precision_bits": list(t.precision_bits),
            },
            "technologies": [r.as_dict() for r in reports],
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
        return 0
    print(
        f"targets: endurance >= {t.endurance:.3g} writes, update energy <= {t.update_energy:.3g} J, "
        f"update time <= {t.update_time:.3g} s, precision {t.precision_bits[0]}-{t.precision_bits[1]} bits"
    )
    for report in reports:
        print(f"{report.name}: {report.verdict}")
        for m in report.metrics:
            value = "?" if m.value is None else f"{m.value:.3g}"
            margin = "" if m.margin is None else f" (margin {m.margin:.3g})"
            note = f"  [{m.note}]" if m.note else ""
            print(f"  {m.metric:15s} {m.verdict:7s} value={value}{margin}{note}")
    return 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oesnn",
        description="Design-space models and a seeded discrete-event simulator "
        "for optoelectronic spiking neural networks.",
    )
    parser.add_argument("--version", action="version", version=f"oesnn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_calc = sub.add_parser("calc", help="evaluate one closed-form model")
    p_calc.add_argument("formula", help="formula name; run with an unknown name to list all")
    p_calc.add_argument("params", nargs=argparse.REMAINDER, help="--param value pairs")
    p_calc.set_defaults(func=cmd_calc)

    p_fig = sub.add_parser("figure", help="write one bundled figure dataset")
    p_fig.add_argument("id", choices=sorted(FIGURES), help="figure dataset id")
    p_fig.add_argument("--out", help="output directory (default $OESNN_OUT or ./out)")
    p_fig.add_argument("--format", choices=("csv", "json"), default="csv")
    p_fig.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a builder parameter")
    p_fig.set_defaults(func=cmd_figure)

    p_sim = sub.add_parser("simulate", help="run a scenario config")
    p_sim.add_argument("--config", required=True, help="path or bundled scenario name")
    p_sim.add_argument("--out", help="output directory (default $OESNN_OUT or ./out)")
    p_sim.add_argument("--seed", type=int, help="override the scenario seed")
    p_sim.add_argument("--profile", choices=sorted(PROFILES), help="override the platform profile")
    p_sim.add_argument("--budget", type=float, help="wall power budget for utilization reporting, W")
    p_sim.set_defaults(func=cmd_simulate)

    p_val = sub.add_parser("validate-eq6", help="empirical check of the degree/path-length model")
    p_val.add_argument("--n", type=float, action="append", required=True, help="network size (repeatable)")
    p_val.add_argument("--k", type=float, action="append", required=True, help="mean degree (repeatable)")
    p_val.add_argument("--seeds", type=int, default=10)
    p_val.add_argument("--seed", type=int, default=0, help="base seed for graph generation")
    p_val.add_argument("--tolerance", type=float, default=0.15)
    p_val.add_argument("--sample-sources", type=int, default=None)
    p_val.add_argument("--out", nargs="?", const="", default=None, help="also write a CSV dataset")
    p_val.set_defaults(func=cmd_validate)

    p_mem = sub.add_parser("membench", help="score synaptic memory technologies")
    p_mem.add_argument("--tech", help="technology table JSON (default: bundled)")
    p_mem.add_argument("--name", help="score a single named technology")
    p_mem.add_argument("--lifetime", type=float, default=DEFAULT_ASSUMPTIONS.lifetime)
    p_mem.add_argument("--mean-rate", type=float, default=DEFAULT_ASSUMPTIONS.mean_rate)
    p_mem.add_argument("--fanin", type=float, default=DEFAULT_ASSUMPTIONS.fanin)
    p_mem.add_argument("--eopt", type=float, default=DEFAULT_ASSUMPTIONS.e_opt)
    p_mem.add_argument("--max-rate", type=float, default=DEFAULT_ASSUMPTIONS.max_rate)
    p_mem.add_argument("--format", choices=("text", "json"), default="text")
    p_mem.set_defaults(func=cmd_membench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return VALIDATION_EXIT
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
