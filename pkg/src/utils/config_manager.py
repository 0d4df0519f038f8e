"""
Config Manager - Singleton pattern
Built-in defaults, optional user overrides and the NCLOGIC_BUDGET environment override
"""
import copy
import json
import logging
import os
from typing import Any, Dict

from src.core.errors import NCLogicError

logger = logging.getLogger(__name__)

BUDGET_ENV = "NCLOGIC_BUDGET"
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


class ConfigManager:
    """Singleton holding the merged configuration"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self._initialized = True
        self.config_dir = os.path.join(PROJECT_ROOT, "config")
        self.default_config_path = os.path.join(self.config_dir, "default_config.json")
        self.user_config_path = os.path.join(self.config_dir, "user_config.json")

        self.config = self._load_config()

    def _get_default_config(self) -> Dict[str, Any]:
        """Built-in defaults"""
        return {
            "enumeration": {
                "max_models": 2_000_000,
                "max_level": 3,
                "max_hf_rank": 4,
                "max_hat_level": 2,
                "max_tarski_size": 3
            },
            "harness": {
                "trials": 1000,
                "model_size": 4,
                "seed": 0,
                "jobs": 1,
                "first_order_samples": 500
            },
            "battery": {
                "acla_samples": 100,
                "omega_formulas": 50,
                "roundtrip_formulas": 24,
                "max_failures": 20
            },
            "logging": {
                "log_dir": "logs",
                "log_level": "WARNING",
                "record_runs": False,
                "db_name": "verification_runs.db"
            },
            "output": {
                "format": "text",
                "indent": 2
            }
        }

    def _load_config(self) -> Dict[str, Any]:
        """Defaults merged with user config, then environment overrides"""
        config = self._get_default_config()

        if os.path.exists(self.user_config_path):
            try:
                user_config = self._load_json(self.user_config_path)
                config = self._merge_configs(config, user_config)
            except (OSError, ValueError) as e:
                logger.warning(f"Error loading user config: {e}")

        self._apply_env(config)
        return config

    def _apply_env(self, config: Dict[str, Any]):
        raw = os.environ.get(BUDGET_ENV)
        if raw is None or raw.strip() == "":
            return
        try:
            budget = int(raw)
        except ValueError:
            raise NCLogicError(f"{BUDGET_ENV} must be an integer, got '{raw}'") from None
        if budget < 1:
            raise NCLogicError(f"{BUDGET_ENV} must be positive, got {budget}")
        config["enumeration"]["max_models"] = budget

    def _load_json(self, path: str) -> Dict[str, Any]:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)

    def _save_json(self, path: str, data: Dict[str, Any]):
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=4, ensure_ascii=False)

    def _merge_configs(self, default: Dict, user: Dict) -> Dict:
        """Merge user config into default config"""
        result = copy.deepcopy(default)
        for key, value in user.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._merge_configs(result[key], value)
            else:
                result[key] = value
        return result

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Value by dotted key path
        e.g. get("enumeration.max_models")
        """
        value = self.config
        for key in key_path.split("."):
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default
        return value

    def set(self, key_path: str, value: Any):
        """
        Set value by dotted key path
        e.g. set("harness.seed", 7)
        """
        keys = key_path.split(".")
        config = self.config
        for key in keys[:-1]:
            if key not in config:
                config[key] = {}
            config = config[key]
        config[keys[-1]] = value

    def save(self) -> bool:
        """Persist current config as the user config"""
        try:
            os.makedirs(self.config_dir, exist_ok=True)
            self._save_json(self.user_config_path, self.config)
            return True
        except OSError as e:
            logger.error(f"Error saving config: {e}")
            return False

    def reload(self):
        """Re-read files and environment"""
        self.config = self._load_config()

    def reset_to_default(self):
        self.config = self._get_default_config()
        if os.path.exists(self.user_config_path):
            os.remove(self.user_config_path)
