"""
Configuration loader utility
"""

import json
import os
from pathlib import Path
from typing import Dict, Any, List, Optional
from dotenv import load_dotenv

from .logger import get_logger

logger = get_logger(__name__)


DEFAULT_CONFIG: Dict[str, Any] = {
    "logging": {
        "level": "WARNING",
        "format": "json",
    },
    "counting": {
        "node_budget": 5_000_000,
        "box_budget": 2_000_000,
        "oversample": 1,
    },
    "scan": {
        "threads": 0,
        "cycle_max_d": 150,
        "stasheff_max_d": 30,
    },
    "table": {
        "max_side": 11,
        "max_total": 13,
    },
    "output": {
        "format": "text",
        "basis": "power",
    },
}


class ConfigLoader:
    """Load and manage configuration files"""

    def __init__(self, config_dir: Optional[str] = None):
        """
        Initialize the config loader

        Args:
            config_dir: Path to configuration directory
        """
        load_dotenv()

        if config_dir is None:
            env_dir = os.getenv('EHRHART_CONFIG_DIR')
            if env_dir:
                self.config_dir = Path(env_dir)
            else:
                self.config_dir = Path(__file__).parent.parent.parent / "config"
        else:
            self.config_dir = Path(config_dir)

        logger.debug(f"Config directory: {self.config_dir}")

        self._cache: Dict[str, Any] = {}

    def load_global_config(self) -> Dict[str, Any]:
        """
        Load global configuration merged over the built-in defaults

        A missing global.json is not an error; the defaults apply.
        """
        loaded = self._load_json("global.json", required=False) or {}
        merged = _merge(DEFAULT_CONFIG, loaded)
        return self._apply_env_overrides(merged)

    def counting_settings(self) -> Dict[str, Any]:
        return self.load_global_config()["counting"]

    def scan_settings(self) -> Dict[str, Any]:
        return self.load_global_config()["scan"]

    def load_graph_file(self, path: str) -> Dict[str, Any]:
        """
        Load a graph record {vertices, edges, root}

        Args:
            path: Absolute path, or a name under config/graphs/

        Returns:
            Raw graph record
        """
        candidate = Path(path)
        if not candidate.exists():
            named = self.config_dir / "graphs" / path
            if not named.suffix:
                named = named.with_suffix(".json")
            candidate = named

        if not candidate.exists():
            raise FileNotFoundError(f"Graph file not found: {path}")

        with open(candidate, 'r') as f:
            record = json.load(f)
        logger.debug(f"Loaded graph file: {candidate}")
        return record

    def list_graph_files(self) -> List[str]:
        """List bundled graph files, skipping templates"""
        graphs_dir = self.config_dir / "graphs"
        if not graphs_dir.exists():
            logger.warning("Graphs directory not found")
            return []
        return sorted(
            config_file.stem
            for config_file in graphs_dir.glob("*.json")
            if not config_file.name.startswith("_")
        )

    def _load_json(self, relative_path: str, required: bool = True) -> Optional[Dict[str, Any]]:
        """
        Load JSON configuration file

        Args:
            relative_path: Path relative to config directory
            required: Whether the file is required

        Returns:
            Configuration dictionary or None
        """
        if relative_path in self._cache:
            return self._cache[relative_path]

        config_path = self.config_dir / relative_path

        if not config_path.exists():
            if required:
                raise FileNotFoundError(f"Configuration file not found: {config_path}")
            return None

        try:
            with open(config_path, 'r') as f:
                config = json.load(f)

            self._cache[relative_path] = config
            logger.debug(f"Loaded config: {relative_path}")
            return config

        except json.JSONDecodeError as e:
            logger.error(f"Invalid JSON in {config_path}: {e}")
            if required:
                raise
            return None

    def _apply_env_overrides(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """
        Apply environment variable overrides to configuration

        Args:
            config: Configuration dictionary

        Returns:
            Updated configuration
        """
        int_overrides = {
            "EHRHART_NODE_BUDGET": ("counting", "node_budget"),
            "EHRHART_BOX_BUDGET": ("counting", "box_budget"),
            "EHRHART_THREADS": ("scan", "threads"),
        }
        for var, (section, key) in int_overrides.items():
            value = os.getenv(var)
            if value:
                try:
                    config[section][key] = int(value)
                except ValueError:
                    logger.warning(f"Ignoring non-integer {var}={value!r}")

        env_format = os.getenv("EHRHART_FORMAT")
        if env_format:
            config["output"]["format"] = env_format.lower()

        return config


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged: Dict[str, Any] = {}
    for key, value in base.items():
        if isinstance(value, dict):
            merged[key] = _merge(value, override.get(key, {}) or {})
        else:
            merged[key] = override.get(key, value)
    for key, value in override.items():
        if key not in merged:
            merged[key] = value
    return merged
