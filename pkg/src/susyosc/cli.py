"""Command-line front end: tabulates potentials, spectra, wavefunctions,
algebra residuals, coherent-state data, and measure densities to CSV.

Every output starts with a ``# params:`` comment echoing all resolved
parameters and the library version, followed by a header row.  Floats are
written with 17 significant digits and no locale dependence, so identical
invocations produce byte-identical files.  Plot scripts (``--format
csv+plotscript``) are generated text for matplotlib and are never executed
here.

Exit codes: 0 success, 1 I/O, 2 parameter domain, 3 numerical convergence.
"""

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__, algebra, coherent, darboux
from .errors import ConvergenceError, DomainError


def parse_complex(text: str) -> complex:
    """Parse 'a', 'a+bI' or 'a-bI' (no spaces); 'bI' alone is also accepted."""
    t = text.strip()
    if not t:
        raise ValueError("empty complex literal")
    if t[-1] in "Ii":
        body = t[:-1]
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "eE":
                return complex(float(body[:k]), float(body[k:]))
        return complex(0.0, float(body))
    return complex(float(t), 0.0)


def parse_grid(text: str) -> darboux.GridSpec:
    """Parse 'min:max:n_points'."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be min:max:n_points, got {text!r}")
    return darboux.GridSpec(float(parts[0]), float(parts[1]), int(parts[2]))


def fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def format_complex(z: complex) -> str:
    if z.imag == 0.0:
        return fmt(z.real)
    return f"{z.real:.17g}{z.imag:+.17g}I"


def grid_text(grid: darboux.GridSpec) -> str:
    return f"{fmt(grid.x_min)}:{fmt(grid.x_max)}:{grid.n_points}"


def write_csv(args, params: dict, header: list[str], rows) -> None:
    path = Path(args.output)
    if path.exists() and not args.force:
        raise FileExistsError(f"{path} exists; pass --force to overwrite")
    lines = ["# params: " + " ".join(f"{k}={v}" for k, v in params.items())]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


_PLOT_SINGLE = '''#!/usr/bin/env python3
"""Plot {csv} (generated alongside the CSV, for manual use)."""
import csv
from pathlib import Path

import matplotlib.pyplot as plt

with Path(__file__).parent.joinpath("{csv}").open(encoding="utf-8") as fh:
    rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
header, data = rows[0], rows[1:]
x = [float(r[0]) for r in data]
for col in range(1, len(header)):
    plt.plot(x, [float(r[col]) for r in data], label=header[col])
plt.xlabel(header[0])
plt.legend()
plt.tight_layout()
plt.show()
'''

_PLOT_FIGURE1 = '''#!/usr/bin/env python3
"""Plot the radial density traces in {csv} (one curve per epsilon)."""
import csv
from collections import defaultdict
from pathlib import Path

import matplotlib.pyplot as plt

with Path(__file__).parent.joinpath("{csv}").open(encoding="utf-8") as fh:
    rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
series = defaultdict(list)
for eps, x, f in rows[1:]:
    series[eps].append((float(x), float(f)))
for eps, pts in series.items():
    xs, fs = zip(*sorted(pts))
    plt.plot(xs, fs, label=f"epsilon = {{eps}}")
plt.xlabel("x = |mu|^2")
plt.ylabel("f(x)")
plt.legend()
plt.tight_layout()
plt.show()
'''


def write_plot_script(args, template: str) -> None:
    if args.format != "csv+plotscript":
        return
    out = Path(args.output)
    script = out.with_name(out.stem + "_plot.py")
    if script.exists() and not args.force:
        raise FileExistsError(f"{script} exists; pass --force to overwrite")
    script.write_text(template.format(csv=out.name), encoding="utf-8")


def _make_seed(args) -> darboux.SeedSolution:
    return darboux.SeedSolution(darboux.PartnerParams(args.epsilon, args.beta))


def _validate_epsilon(epsilon: float) -> None:
    darboux.validate_params(darboux.PartnerParams(epsilon, 0.0))


def cmd_potential(args) -> None:
    seed = _make_seed(args)
    xs = args.grid.points()
    values = seed.potential(xs)
    params = {
        "command": "potential",
        "epsilon": fmt(args.epsilon),
        "beta": format_complex(args.beta),
        "grid": grid_text(args.grid),
        "version": __version__,
    }
    if seed.params.complex_family:
        rows = zip(xs, values.real, values.imag)
        write_csv(args, params, ["x", "V_re", "V_im"], rows)
    else:
        write_csv(args, params, ["x", "V"], zip(xs, values))
    write_plot_script(args, _PLOT_SINGLE)


def cmd_spectrum(args) -> None:
    seed = _make_seed(args)
    xs = args.grid.points()
    potential = seed.potential(xs)
    rows = []
    if not seed.params.complex_family:
        state = darboux.ground_state(seed, args.grid)
        rows.append(("eps", args.epsilon, darboux.hamiltonian_residual(state, potential, args.epsilon)))
    for n in range(args.n_max + 1):
        state = darboux.excited_state(seed, n, args.grid)
        energy = darboux.energy_level(n)
        rows.append((str(n), energy, darboux.hamiltonian_residual(state, potential, energy)))
    params = {
        "command": "spectrum",
        "epsilon": fmt(args.epsilon),
        "beta": format_complex(args.beta),
        "n_max": args.n_max,
        "grid": grid_text(args.grid),
        "version": __version__,
    }
    write_csv(args, params, ["state", "energy", "residual"], rows)


def cmd_wavefunction(args) -> None:
    seed = _make_seed(args)
    if args.state == "eps":
        state = darboux.ground_state(seed, args.grid)
    elif args.state.startswith("plus:"):
        state = darboux.oscillator_state(int(args.state[5:]), args.grid)
    else:
        state = darboux.excited_state(seed, int(args.state), args.grid)
    params = {
        "command": "wavefunction",
        "epsilon": fmt(args.epsilon),
        "beta": format_complex(args.beta),
        "state": args.state,
        "grid": grid_text(args.grid),
        "version": __version__,
    }
    values = np.asarray(state.values)
    if np.iscomplexobj(values):
        write_csv(args, params, ["x", "psi_re", "psi_im"], zip(state.x, values.real, values.imag))
    else:
        write_csv(args, params, ["x", "psi"], zip(state.x, values))
    write_plot_script(args, _PLOT_SINGLE)


def cmd_algebra_check(args) -> None:
    _validate_epsilon(args.epsilon)
    rep = algebra.build_fock_rep(args.epsilon, args.dim)
    rows = []
    for name, value in algebra.commutator_check(rep).items():
        rows.append((f"commutator_{name}", value))
    for name, value in algebra.casimir_check(rep).items():
        rows.append((name, value))
    params = {
        "command": "algebra-check",
        "epsilon": fmt(args.epsilon),
        "dim": args.dim,
        "version": __version__,
    }
    write_csv(args, params, ["check", "residual"], rows)


def cmd_coherent(args) -> None:
    _validate_epsilon(args.epsilon)
    state = coherent.build_coherent_state(args.epsilon, args.mu)
    rep = algebra.build_fock_rep(args.epsilon, state.n_trunc + 3)
    vec = state.fock_vector(state.n_trunc + 3)
    residual = float(np.linalg.norm(rep.b @ vec - state.mu * vec))
    params = {
        "command": "coherent",
        "epsilon": fmt(args.epsilon),
        "mu": format_complex(args.mu),
        "c0": fmt(state.c0),
        "n_trunc": state.n_trunc,
        "trunc_tail": fmt(state.trunc_tail),
        "eigen_residual": fmt(residual),
        "version": __version__,
    }
    rows = zip(range(state.n_trunc + 1), state.coeffs.real, state.coeffs.imag)
    write_csv(args, params, ["n", "coeff_re", "coeff_im"], rows)


def cmd_measure(args) -> None:
    _validate_epsilon(args.epsilon)
    if args.grid is not None:
        xs = args.grid.points()
        if args.grid.x_min <= 0.0:
            raise DomainError("measure density grid requires x_min > 0")
        sigma = coherent.measure_density(args.epsilon, xs)
        params = {
            "command": "measure",
            "epsilon": fmt(args.epsilon),
            "grid": grid_text(args.grid),
            "version": __version__,
        }
        write_csv(args, params, ["x", "sigma"], zip(xs, sigma))
        write_plot_script(args, _PLOT_SINGLE)
        return
    rows = []
    for n in range(args.moments + 1):
        numeric = coherent.measure_moment(args.epsilon, n)
        target = coherent.moment_target(args.epsilon, n)
        rows.append((n, numeric, target, abs(numeric - target) / abs(target)))
    params = {
        "command": "measure",
        "epsilon": fmt(args.epsilon),
        "moments": args.moments,
        "version": __version__,
    }
    write_csv(args, params, ["n", "moment", "target", "rel_error"], rows)


def cmd_figure1(args) -> None:
    epsilons = [float(t) for t in args.epsilons.split(",") if t.strip()]
    for eps in epsilons:
        _validate_epsilon(eps)
    if args.grid.x_min <= 0.0:
        raise DomainError("radial density grid requires x_min > 0")
    xs = args.grid.points()
    rows = []
    for eps in epsilons:
        f = coherent.radial_density(eps, xs)
        rows.extend((eps, x, v) for x, v in zip(xs, f))
    params = {
        "command": "figure1",
        "epsilons": ",".join(fmt(e) for e in epsilons),
        "grid": grid_text(args.grid),
        "version": __version__,
    }
    write_csv(args, params, ["epsilon", "x", "f"], rows)
    write_plot_script(args, _PLOT_FIGURE1)


# lets values like "--grid -6:6:601" parse without the --grid=... form
_VALUE_MATCHER = re.compile(r"^-\d+(\.\d+)?([:,].*)?$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="susyosc",
        description="Deformed-oscillator partner potentials, their ladder "
        "algebra, and the associated coherent states.",
    )
    parser._negative_number_matcher = _VALUE_MATCHER
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sub(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p._negative_number_matcher = _VALUE_MATCHER
        return p

    def add_output(p):
        p.add_argument("-o", "--output", required=True, help="output CSV path")
        p.add_argument("--force", action="store_true", help="overwrite existing files")

    def add_format(p):
        p.add_argument(
            "--format",
            choices=["csv", "csv+plotscript"],
            default="csv",
            help="also emit a matplotlib script next to the CSV",
        )

    def add_family(p):
        p.add_argument("--epsilon", type=float, required=True, help="factorization energy (< 1/2)")
        p.add_argument(
            "--beta",
            type=parse_complex,
            default=complex(0.0),
            help="seed coefficient; real or a+bI literal",
        )

    p = add_sub("potential", help="tabulate the partner potential")
    add_family(p)
    p.add_argument("--grid", type=parse_grid, default=darboux.GridSpec(-6.0, 6.0, 601))
    add_output(p)
    add_format(p)
    p.set_defaults(func=cmd_potential)

    p = add_sub("spectrum", help="energies and eigen-equation residuals")
    add_family(p)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--grid", type=parse_grid, default=darboux.DEFAULT_GRID)
    add_output(p)
    p.set_defaults(func=cmd_spectrum, format="csv")

    p = add_sub("wavefunction", help="sample one eigenfunction")
    add_family(p)
    p.add_argument(
        "--state",
        default="0",
        help="'eps', an excited index n, or 'plus:n' for the plain oscillator",
    )
    p.add_argument("--grid", type=parse_grid, default=darboux.DEFAULT_GRID)
    add_output(p)
    add_format(p)
    p.set_defaults(func=cmd_wavefunction)

    p = add_sub("algebra-check", help="commutator and Casimir residuals")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--dim", type=int, default=20)
    add_output(p)
    p.set_defaults(func=cmd_algebra_check, format="csv")

    p = add_sub("coherent", help="coherent-state coefficients")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--mu", type=parse_complex, required=True, help="state label; a+bI literal")
    add_output(p)
    p.set_defaults(func=cmd_coherent, format="csv")

    p = add_sub("measure", help="measure density moments or samples")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--moments", type=int, default=6, help="verify moments 0..N against targets")
    p.add_argument("--grid", type=parse_grid, default=None, help="sample sigma(x) instead")
    add_output(p)
    add_format(p)
    p.set_defaults(func=cmd_measure)

    p = add_sub("figure1", help="radial density traces f(x) per epsilon")
    p.add_argument("--epsilons", default="-1.5,-0.5,0.25", help="comma-separated list")
    p.add_argument("--grid", type=parse_grid, default=darboux.GridSpec(0.05, 12.0, 240))
    add_output(p)
    add_format(p)
    p.set_defaults(func=cmd_figure1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except DomainError as exc:
        print(f"susyosc: domain error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"susyosc: convergence failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"susyosc: i/o error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
