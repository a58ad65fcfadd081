import os
from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL = os.getenv("RESTORE_LOG_LEVEL", "INFO").upper()

# Rec.601 luma in thousandths; 299R + 587G + 114B < 1000*T keeps the mask test exact
LUMA_WEIGHTS = (299, 587, 114)

#CLI spelling -> canonical rule
CHANNEL_RULES = {
  "luma": "luma",
  "max": "max-channel",
  "max-channel": "max-channel",
  "min": "min-channel",
  "min-channel": "min-channel",
}

#Inpaint
DEFAULT_MIN_NEIGHBORS = int(os.getenv("RESTORE_MIN_NEIGHBORS", "3"))
DEFAULT_MAX_ITERATIONS = int(os.getenv("RESTORE_MAX_ITERATIONS", "10000"))
RESIDUAL_POLICIES = ("leave", "fill-nearest")

#Wavelet
KERNEL_ID = "b3-spline"
B3_TAPS = (1.0, 4.0, 6.0, 4.0, 1.0)
DEFAULT_LEVELS = int(os.getenv("RESTORE_WAVELET_LEVELS", "5"))
STACK_DUMP_OFFSET = 128.0

#Compose
BACKGROUND = (255, 255, 255)

# SplitMix64, frozen: changing any of these changes every synthetic case
SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
SPLITMIX_MUL1 = 0xBF58476D1CE4E5B9
SPLITMIX_MUL2 = 0x94D049BB133111EB

# light paper-like sanguine down to saturated red chalk
DEFAULT_CHALK_PALETTE = [
  (236, 214, 190),
  (218, 168, 138),
  (198, 122, 96),
  (180, 80, 60),
]
SYNTH_TRUTH_LEVELS = 4

CORPUS_PATH = os.getenv(
  "RESTORE_CORPUS_PATH",
  os.path.join(os.path.dirname(__file__), "corpus", "corpus.yaml"),
)

EXIT_OK = 0
EXIT_BAD_CONFIG = 1
EXIT_IO = 2
EXIT_INTERNAL = 3

# Stage outputs follow the four-panel order: original, white text, inpainted, filtered
STAGES = {
  "original": "01_original",
  "whiteout": "02_whiteout",
  "inpainted": "03_inpainted",
  "filtered": "04_filtered",
  "overlay": "05_overlay",
}
