"""
Command-line front end for the cyclosense spectrum sensing simulator
"""
import argparse
import logging
import sys
from dataclasses import replace
from typing import Dict, List, Optional

from .config.loader import load_config_values
from .config.settings import FEATURE_SCAN_MAX_LAG, PROBE_SAMPLES
from .utils.errors import ConfigurationError, CyclosenseError
from .utils.helpers import configure_logging

logger = logging.getLogger(__name__)

EXPERIMENT_COMMANDS = {
    "pfa-verify": ("pfa_verify", "Empirical P_fa of EV-CSS at its analytic threshold (H0 only)"),
    "hist": ("statistic_hist", "H0 histograms of the EV-CSS statistic against the chi2 density"),
    "roc": ("roc", "ROC from one H0/H1 pass, thresholds swept over a P_fa grid"),
    "pd-vs-snr": ("pd_vs_snr", "P_d against SNR"),
    "pd-vs-n": ("pd_vs_n", "P_d against frame length N, optionally for several rho"),
    "interference": ("interference", "P_d against SIR with a co-channel BPSK interferer"),
    "pd-vs-m": ("pd_vs_m", "P_d against the number of antennas M"),
}

# flags whose list is a grid for some experiments and a scalar for the rest
_GRID_FLAGS = {
    "m": ("m_grid", ("pfa_verify", "statistic_hist", "pd_vs_m")),
    "n": ("n_grid", ("pd_vs_n",)),
    "noise_var": ("noise_variances", ("pfa_verify", "statistic_hist")),
}

_SCALAR_FLAGS = {
    "seed": "master_seed",
    "trials": "n_trials",
    "pfa": "pfa",
    "calibration_trials": "calibration_trials",
    "hist_bins": "hist_bins",
    "lag": "lag",
    "conjugate": "conjugate",
    "workers": "workers",
    "perfect_csi": "perfect_csi",
}

_LIST_FLAGS = {"snr_db": "snr_db", "rho": "rho", "sir_db": "sir_db", "detectors": "detectors"}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="Flat key = value experiment file")
    common.add_argument("--seed", type=int, help="Master seed")
    common.add_argument("--trials", type=int, help="Monte Carlo trials per pass")
    common.add_argument("--out", help="Output CSV path (default: stdout)")
    common.add_argument("--workers", type=int, help="Worker processes (default: $CYCLOSENSE_WORKERS or core count)")
    common.add_argument("-v", "--verbose", action="store_const", const=1, dest="verbosity",
                        help="Debug logging")
    common.add_argument("-q", "--quiet", action="store_const", const=-1, dest="verbosity",
                        help="Warnings only")
    return common


def _scenario_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, nargs="+", help="Antennas (a grid for pfa-verify, hist, pd-vs-m)")
    parser.add_argument("--n", type=int, nargs="+", help="Samples per frame (a grid for pd-vs-n)")
    parser.add_argument("--snr-db", type=float, nargs="+", dest="snr_db", help="SNR grid in dB")
    parser.add_argument("--rho", type=float, nargs="+", help="Spatial noise correlation(s)")
    parser.add_argument("--noise-var", type=float, nargs="+", dest="noise_var",
                        help="Noise variance (a grid for pfa-verify and hist)")
    parser.add_argument("--pfa", type=float, help="Target false-alarm probability")
    parser.add_argument("--lag", type=int,
                        help="Feature lag tau_0 in samples (default 0, or the strongest lag with --non-conjugate)")
    parser.add_argument("--non-conjugate", action="store_false", dest="conjugate",
                        help="Use the non-conjugate symbol-rate feature instead of 2 f_c")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per experiment plus calibrate and feature-scan"""
    parser = argparse.ArgumentParser(prog="cyclosense",
                                     description="Eigenvalue-based cyclostationary spectrum sensing simulator")
    commands = parser.add_subparsers(dest="command", metavar="command")
    common = _common_options()

    for name, (_kind, help_text) in EXPERIMENT_COMMANDS.items():
        sub = commands.add_parser(name, parents=[common], help=help_text, description=help_text,
                                  argument_default=argparse.SUPPRESS)
        _scenario_options(sub)
        sub.add_argument("--detectors", nargs="+", help="Detector ids (ev-css sum-msdf egc-msdf bmrc-msdf)")
        sub.add_argument("--sir-db", type=float, nargs="+", dest="sir_db", help="SIR grid in dB")
        sub.add_argument("--calibration-trials", type=int, dest="calibration_trials",
                         help="H0 trials per baseline threshold calibration")
        sub.add_argument("--trials-out", dest="trials_out", help="Also write every trial record to this CSV")
        sub.add_argument("--no-progress", action="store_true", dest="no_progress", help="Hide the progress bar")
        sub.add_argument("--perfect-csi", action="store_true", dest="perfect_csi", help=argparse.SUPPRESS)
        if name == "hist":
            sub.add_argument("--hist-bins", type=int, dest="hist_bins", help="Histogram bins")
            sub.add_argument("--hist-out", dest="hist_out",
                             help="Histogram base path; one file per cell, suffixed _M<m>_var<v>")

    calibrate = commands.add_parser("calibrate", parents=[common], argument_default=argparse.SUPPRESS,
                                    help="Empirical H0 threshold of one detector")
    _scenario_options(calibrate)
    calibrate.add_argument("--detector", default="sum-msdf", help="Detector id")
    calibrate.add_argument("--sir-db", type=float, nargs="+", dest="sir_db", help="SIR in dB (adds the interferer)")

    scan = commands.add_parser("feature-scan", parents=[common], argument_default=argparse.SUPPRESS,
                               help="BPSK cyclic-frequency catalog with the best lag of each feature")
    scan.add_argument("--max-lag", type=int, default=FEATURE_SCAN_MAX_LAG, dest="max_lag", help="Largest lag tried")
    scan.add_argument("--probe-samples", type=int, default=PROBE_SAMPLES, dest="probe_samples",
                      help="Length of the clean probe signal")
    return parser


def _overrides(args: argparse.Namespace, kind: str) -> Dict[str, object]:
    """Configuration keys set on the command line"""
    given = vars(args)
    values: Dict[str, object] = {}
    for flag, key in _SCALAR_FLAGS.items():
        if flag in given:
            values[key] = given[flag]
    for flag, key in _LIST_FLAGS.items():
        if flag in given:
            values[key] = list(given[flag])
    for flag, (grid_key, grid_kinds) in _GRID_FLAGS.items():
        if flag not in given:
            continue
        scalar_key = "noise_variance" if flag == "noise_var" else flag
        if kind in grid_kinds:
            values[grid_key] = list(given[flag])
        else:
            values[scalar_key] = list(given[flag])
    return values


def _experiment_config(args: argparse.Namespace, kind: str):
    from .harness.experiment import ExperimentConfig

    values = load_config_values(getattr(args, "config", None))
    values.update(_overrides(args, kind))
    return ExperimentConfig.from_mapping(kind, values)


def run_experiment_command(args: argparse.Namespace) -> int:
    from .harness.output import emit_csv, emit_histogram, emit_trials_csv, histogram_path
    from .harness.runner import run_experiment

    kind = EXPERIMENT_COMMANDS[args.command][0]
    config = _experiment_config(args, kind)
    trials_out = getattr(args, "trials_out", None)
    result = run_experiment(config, show_progress=not getattr(args, "no_progress", False),
                            keep_records=trials_out is not None)

    out = getattr(args, "out", None)
    emit_csv(result.summary, out)
    if trials_out is not None:
        emit_trials_csv(result.records, trials_out)
    hist_base = getattr(args, "hist_out", None) or out
    for cell, bins in result.histograms:
        emit_histogram(bins, histogram_path(hist_base, cell.m, cell.noise_variance, cell.rho)
                       if hist_base else None)
    return 0


def run_calibrate_command(args: argparse.Namespace) -> int:
    from .detectors.calibration import calibrate_threshold
    from .harness.experiment import ExperimentConfig
    from .harness.output import emit_rows
    from .utils.workers import TrialPool

    values = load_config_values(getattr(args, "config", None))
    values.update(_overrides(args, "pd_vs_snr"))
    values.pop("sir_db", None)
    # --trials is the calibration run length here; calibrate_threshold checks it against 10/pfa
    values.pop("n_trials", None)
    config = ExperimentConfig.from_mapping("pd_vs_snr", values)
    sir = getattr(args, "sir_db", None)
    if sir is not None and len(sir) != 1:
        raise ConfigurationError("calibrate takes a single --sir-db value")

    cell = config.cells()[0]
    scenario = config.scenario(cell)
    if sir is not None:
        scenario = replace(scenario, sir_db=sir[0])
    n_trials = getattr(args, "trials", None) or config.calibration_trials

    with TrialPool(config.workers) as pool:
        threshold = calibrate_threshold(args.detector, scenario, config.pfa, n_trials,
                                        config.master_seed, config.feature, pool=pool)
    header = ("detector", "M", "N", "snr_db", "rho", "noise_var", "pfa_target", "trials", "threshold")
    row = (args.detector, scenario.n_antennas, scenario.n_samples, scenario.snr_db, scenario.rho,
           scenario.noise_variance, config.pfa, n_trials, threshold)
    emit_rows(header, [row], getattr(args, "out", None))
    return 0


def run_feature_scan_command(args: argparse.Namespace) -> int:
    from .harness.output import emit_rows
    from .sigmodel.bpsk import best_lag, cyclic_features_bpsk

    config = _experiment_config(args, "pd_vs_snr")
    signal = config.signal
    rows = []
    for feature in cyclic_features_bpsk(signal):
        lag = best_lag(signal, feature, args.max_lag, n_probe=args.probe_samples)
        rows.append((feature.alpha_hz, feature.conjugate, lag))
    emit_rows(("alpha_hz", "conjugate", "best_lag"), rows, getattr(args, "out", None))
    return 0


def cli_main(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run the command and return the process exit code"""
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    configure_logging(getattr(args, "verbosity", 0))
    try:
        if args.command in EXPERIMENT_COMMANDS:
            return run_experiment_command(args)
        if args.command == "calibrate":
            return run_calibrate_command(args)
        return run_feature_scan_command(args)
    except ConfigurationError as e:
        logger.error("configuration error: %s", e)
        return 2
    except CyclosenseError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return 1
    except KeyboardInterrupt:
        logger.error("interrupted")
        return 1
    except Exception:
        logger.exception("unexpected failure")
        return 1


def main():
    """Main entry point"""
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == '__main__':
    main()
