# Basic Application Configuration
APPLICATION_NAME = "Ballast"
APPLICATION_TAGLINE = "Deterministic gates, memory and telemetry for long-running agents"
APPLICATION_VERSION = "1.0.0"
STORE_VERSION = 1 # Written into every store record for forensic replay across versions

# Logging Configuration
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVEL = "WARNING" # Lowered to DEBUG by --verbose

# State Directory Configuration
STATE_DIR_ENV = "BALLAST_STATE_DIR" # Environment fallback for --state-dir
DEFAULT_STATE_DIR = "state"
MEMORY_DIR_NAME = "memory"
CYCLE_LOG_DIR_NAME = "cycle-log" # Daily-rotated, one file per UTC date
STORE_NAMES = (
    "narrative", "threads", "facts", "cbr_cases", "tasks",
    "comms", "affect", "dag_nodes", "artifacts", "endeavours",
)
AUXILIARY_STORE_NAMES = ("meta",) # Meta-observer observations

# Gate Configuration
DEFAULT_MODIFY_THRESHOLD = 0.35
DEFAULT_REJECT_THRESHOLD = 0.55
MAX_IMPORTANCE = 5
MAX_MAGNITUDE = 5
REQUIRED_MAGNITUDE = 4 # Magnitude at or above which a feature translates to Required
OUGHT_MAGNITUDE = 2 # Magnitude at or above which a feature translates to Ought
CATASTROPHIC_MAGNITUDE = 2 # Minimum magnitude for a catastrophic feature to count
TIGHTEN_FACTOR = 0.85
FLOOR_PROHIBIT_LEVEL = 5000 # Legal and above
FLOOR_CONSTRAIN_LEVELS = (2000, 3500) # Professional Ethics to Safety (Physical)

# Retrieval Configuration
RETRIEVAL_WEIGHTS = {
    "index": 0.25,
    "embedding": 0.40,
    "field": 0.10,
    "recency": 0.05,
    "domain": 0.10,
    "utility": 0.10,
}
RETRIEVAL_K = 4
RECENCY_HALF_LIFE_DAYS = 30.0
EMBEDDING_DIM = 256
FIELD_WEIGHTS = {"problem": 0.5, "keywords": 0.3, "solution": 0.2}
MIN_TOKEN_LENGTH = 2

# Memory Configuration
FACT_HALF_LIFE_DAYS = 30.0
THREAD_THRESHOLD = 4
THREAD_WEIGHTS = {"location": 3, "domain": 2, "keywords": 1}
THREAD_KEYWORD_CAP = 3 # Keyword overlap counted at most this many times
DEDUP_THRESHOLD = 0.92
PRUNE_MIN_AGE_DAYS = 30
PRUNE_MAX_CONFIDENCE = 0.3

# Affect Configuration
EMA_ALPHA = 0.15
CALM_BASELINE = 85.0
TREND_BAND = 5.0 # Pressure change (points) treated as stable
CALM_TOOL_FAILURE_PENALTY = 15.0
CALM_GATE_REJECTION_PENALTY = 20.0
CALM_DELEGATION_FAILURE_PENALTY = 15.0
RETRY_TIERS = (0.0, 20.0, 40.0, 60.0) # Indexed by same-tool retries, last tier repeats
GATE_REJECTION_TIERS = (0.0, 15.0, 30.0)
OUTPUT_REJECTION_TIERS = (0.0, 30.0, 55.0, 80.0)
FAILURE_STREAK_STEP = 10.0 # Per consecutive failed cycle
FAILURE_STREAK_CAP = 50.0
TOOL_FAILURE_DESPERATION = 40.0
CONFIDENCE_WEIGHTS = {"cbr_hit_rate": 40.0, "recent_success_rate": 40.0, "tool_success_rate": 20.0}
FRUSTRATION_WEIGHTS = {
    "tool_failure_rate": 50.0,
    "gate_modifications": 15.0, # Per modification
    "delegation_failure_rate": 30.0,
    "budget_pressure": 20.0,
}
PRESSURE_WEIGHTS = {"desperation": 0.45, "frustration": 0.25, "confidence_gap": 0.15, "calm_gap": 0.15}
REPLAY_START = "2026-03-29T00:00:00Z" # Timestamp of the first replayed cycle
REPLAY_INTERVAL_SECONDS = 60.0

# Pattern Detector Configuration
REPEATED_FAILURE_MIN = 3 # Failures on one domain
TOOL_FAILURE_RATE = 0.20
TOOL_FAILURE_MIN_CALLS = 5
MODEL_ESCALATION_MIN = 5
COST_OUTLIER_FACTOR = 3.0
CBR_MISS_RATE = 0.50

# Meta Observer Configuration
META_RATE_LIMIT = 20 # Cycles per window
META_RATE_WINDOW_SECONDS = 3600
META_SLIDING_WINDOW = 10 # Most recent decisions examined for rejections
META_REJECTION_MIN = 3
META_RISK_SUBWINDOWS = 3
META_FALSE_POSITIVE_RATE = 0.50
META_TIGHTEN_LIMIT = 2 # Tightenings tolerated before persistence escalates
META_RETENTION_DAYS = 7

# Sensorium Configuration
SENSORIUM_WINDOW = 20 # Narrative entries feeding vitals
NOVELTY_WINDOW = 20 # Recent inputs compared for novelty
COST_TREND_BAND = 0.10
FAILURE_SUMMARY_CHARS = 80

# Benchmark Configuration
BENCH_CASES = 800
BENCH_DOMAINS = 4
BENCH_QUERIES = 200
BENCH_DIFFICULTY_MIX = {"easy": 70, "medium": 70, "hard": 60}
BENCH_SEED = 42
BENCH_BOOTSTRAP = 1000
BENCH_MIN_OVERLAP = 2
BENCH_CURVE_SIZES = (25, 50, 100, 200, 400, 800)
BENCH_RETRY_CAP = 50 # Anchor redraws per query before giving up
BENCH_MIN_RELEVANT = 4 # Preferred relevant cases per query; at least 1 is required
BENCH_DOMAIN_NAMES = ("email", "research", "coding", "scheduling")
BENCH_TOPICS = 10 # Topics per domain
BENCH_CORE_TOKENS = 4 # Frequent distinctive tokens per topic
BENCH_RARE_TOKENS = 8 # Infrequent distinctive tokens per topic
BENCH_AMBIGUOUS_TOKENS = 6 # Tokens per topic slot shared by every domain
BENCH_EMBEDDING_DIM = 1024
BENCH_EPOCH = "2026-03-29T00:00:00Z" # Benchmark "now"
BENCH_MAX_AGE_DAYS = 365
BENCH_CONFIDENCE = 0.95

# Other Configurations
from config.character import *
from config.gates import *
from config.sample import *
