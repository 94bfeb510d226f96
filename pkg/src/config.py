import os
import yaml
import logging
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config", "defaults.yaml"
)

def load_config(config_path=None):
    """
    Load documented defaults from YAML and runtime overrides from the environment.

    The YAML file holds the values the CLI flags fall back to. Runtime settings
    (worker count, log directory, log level) may be overridden through
    CU_SKETCH_LAB_* environment variables, optionally provided by a .env file.

    Args:
        config_path (str, optional): Path to the YAML file. Defaults to config/defaults.yaml.

    Returns:
        dict: Configuration with 'experiments' and 'runtime' sections.

    Raises:
        FileNotFoundError: If the configuration file does not exist.
        ValueError: If a value fails validation.
    """
    # Load environment variables from .env file
    load_dotenv()

    config_path = config_path or DEFAULT_CONFIG_PATH
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    with open(config_path, 'r') as f:
        config = yaml.safe_load(f) or {}

    # Ensure sections exist
    if 'experiments' not in config:
        config['experiments'] = {}
    if 'runtime' not in config:
        config['runtime'] = {}

    experiments = config['experiments']
    experiments.setdefault('root_seed', 20220501)
    experiments.setdefault('n', 1000)
    experiments.setdefault('N', 10000)
    experiments.setdefault('replicates', 15)
    experiments.setdefault('concentration_replicates', 50)
    experiments.setdefault('bin_width', 0.02)
    experiments.setdefault('mode_smoothing', 0.04)
    experiments.setdefault('fine_step', 0.05)
    experiments.setdefault('coarse_step', 0.25)
    experiments.setdefault('zipf_betas', [0.0, 0.2, 0.5, 0.7, 0.9])
    experiments.setdefault('retry_budget', 1000)

    runtime = config['runtime']
    runtime.setdefault('jobs', None)
    runtime.setdefault('log_dir', 'logs')
    runtime.setdefault('log_level', 'INFO')

    # Override with environment variables
    if os.environ.get('CU_SKETCH_LAB_JOBS'):
        runtime['jobs'] = int(os.environ['CU_SKETCH_LAB_JOBS'])
    if 'CU_SKETCH_LAB_LOG_DIR' in os.environ:
        runtime['log_dir'] = os.environ['CU_SKETCH_LAB_LOG_DIR'] or None
    if os.environ.get('CU_SKETCH_LAB_LOG_LEVEL'):
        runtime['log_level'] = os.environ['CU_SKETCH_LAB_LOG_LEVEL'].upper()

    if runtime['jobs'] is None:
        runtime['jobs'] = os.cpu_count() or 1

    # Basic validation
    if runtime['jobs'] < 1:
        raise ValueError(f"jobs must be at least 1, got {runtime['jobs']}")
    if experiments['root_seed'] < 0:
        raise ValueError("root_seed must be non-negative")
    if experiments['retry_budget'] < 1:
        raise ValueError("retry_budget must be at least 1")
    if experiments['mode_smoothing'] < 0:
        raise ValueError("mode_smoothing must be non-negative")

    logger.info(f"Loaded configuration from {config_path}")
    return config
