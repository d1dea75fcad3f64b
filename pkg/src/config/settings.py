"""
Configuration settings for the cyclostationary spectrum sensing simulator
"""

# Signal-of-interest operating point
CARRIER_FREQ_HZ = 80e3
SYMBOL_PERIOD_S = 25e-6
SAMPLE_RATE_HZ = 320e3
SOI_POWER = 1.0

# Sensing frame
N_ANTENNAS = 2
N_SAMPLES = 4000
TARGET_PFA = 0.1
FEATURE_LAG = 0  # tau_0 of the 2*f_c conjugate feature

# Numerical limits
CONDITION_LIMIT = 1e12
MU_CEILING = 1.0 - 1e-12
MAX_SVD_SIZE = 64

# best_lag calibration probe
PROBE_SAMPLES = 2 ** 18
PROBE_SEED = 20120101

# MSDF baselines
MSDF_FFT_SIZE = 256  # rectangular main lobe 2 f_s / n_fft stays inside the f_s / 100 resolution
MSDF_RESOLUTION_FRACTION = 0.01  # resolution = f_s / 100
MSDF_OVERLAP = 0.5

# Interferer placement
INTERFERER_OVERLAP = 0.3  # main-lobe spectral overlap with the SOI

# Harness defaults
PFA_VERIFY_TRIALS = 10_000
PD_TRIALS = 2_000
CALIBRATION_TRIALS = 5_000
MIN_TRIALS = 100
MAX_REDRAWS = 10
UNDECIDABLE_WARN_FRACTION = 0.01
SNR_GRID_DB = tuple(range(-20, 1, 2))
SIR_GRID_DB = tuple(range(-20, 1, 4))
N_GRID = (500, 1000, 2000, 4000, 8000)
M_GRID = (2, 3, 4)
CFAR_M_GRID = (2, 4)
NOISE_VARIANCES = (1.0, 10.0)
ROC_PFA_GRID = (0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9)
ROC_SNR_DB = -14.0
TRANSITION_SNR_DB = -14.0
INTERFERENCE_SNR_DB = 0.0  # keeps P_d at SIR 0 dB short of saturation
HIST_BINS = 50
FEATURE_SCAN_MAX_LAG = 16
MASTER_SEED = 1

# Worker pool
WORKERS_ENV = "CYCLOSENSE_WORKERS"
TRIAL_CHUNK = 250

# Detector identifiers used by the CLI and CSV outputs
DETECTOR_IDS = ("ev-css", "sum-msdf", "egc-msdf", "bmrc-msdf")
PERFECT_CSI_ID = "mrc-msdf"
