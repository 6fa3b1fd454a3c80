"""
配置管理模块

功能：
- 从YAML文件加载运行配置
- 类型安全的配置访问
- 验证配置完整性（日志级别、迭代上限、线程池大小、输出格式）
"""

import logging
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, Field, field_validator

from core.patterns import MAX_ITERS_CAP


logger = logging.getLogger(__name__)

# 与 maps.linguistic.CompositionOperator 的取值一致
OperatorName = Literal["max-min", "min-min", "max-max", "min-max"]


class SystemConfigModel(BaseModel):
    """系统级配置"""
    log_level: str = Field(default="WARNING")
    log_format: str = Field(default="%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    @field_validator("log_level", mode="before")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """只接受 logging 模块认识的级别名称"""
        level = str(v).upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"Unknown log level: {v}")
        return level


class EngineConfigModel(BaseModel):
    """推理引擎配置"""
    max_iters_cap: int = Field(default=MAX_ITERS_CAP, gt=0, description="默认迭代上限 min(状态空间, cap) 中的 cap")
    default_operator: OperatorName = Field(default="max-min", description="语言模型的默认合成算子")


class SweepConfigModel(BaseModel):
    """sweep 命令配置"""
    max_workers: int = Field(default=4, ge=1, le=64, description="线程池大小")


class OutputConfigModel(BaseModel):
    """报告输出配置"""
    default_format: Literal["tsv", "md"] = Field(default="tsv")


class AppConfigModel(BaseModel):
    """应用总配置模型"""
    system: SystemConfigModel = Field(default_factory=SystemConfigModel)
    engine: EngineConfigModel = Field(default_factory=EngineConfigModel)
    sweep: SweepConfigModel = Field(default_factory=SweepConfigModel)
    output: OutputConfigModel = Field(default_factory=OutputConfigModel)


class ConfigManager:
    """
    配置管理器

    使用示例:
        # 加载配置
        config = ConfigManager.load_from_file("config/fuzzy_maps.yaml")

        # 获取引擎配置
        engine = config.get_engine_config()
        engine.max_iters_cap   # 1000000

        # 获取系统配置
        system = config.get_system_config()
    """

    def __init__(self, config: AppConfigModel):
        self._config = config
        logger.debug(
            f"Loaded configuration: cap={config.engine.max_iters_cap}, "
            f"workers={config.sweep.max_workers}, format={config.output.default_format}"
        )

    @classmethod
    def load_from_file(cls, config_path: str | Path) -> "ConfigManager":
        """
        从YAML文件加载配置

        Args:
            config_path: 配置文件路径

        Returns:
            ConfigManager实例

        Raises:
            FileNotFoundError: 配置文件不存在
            ValueError: 配置验证失败
        """
        config_path = Path(config_path)

        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")

        # 读取YAML（空文件等同于全部使用默认值）
        with open(config_path, 'r', encoding='utf-8') as f:
            raw_config = yaml.safe_load(f) or {}

        # 验证并创建配置对象
        try:
            config = AppConfigModel(**raw_config)
        except Exception as e:
            logger.error(f"Failed to validate config: {e}")
            raise ValueError(f"Invalid configuration: {e}") from e

        logger.info(f"Successfully loaded config from {config_path}")
        return cls(config)

    @classmethod
    def load_from_dict(cls, config_dict: dict) -> "ConfigManager":
        """
        从字典加载配置（用于测试）

        Args:
            config_dict: 配置字典

        Returns:
            ConfigManager实例
        """
        config = AppConfigModel(**config_dict)
        return cls(config)

    @classmethod
    def defaults(cls) -> "ConfigManager":
        """没有配置文件时使用的默认配置"""
        return cls(AppConfigModel())

    def get_system_config(self) -> SystemConfigModel:
        """获取系统配置"""
        return self._config.system

    def get_engine_config(self) -> EngineConfigModel:
        """获取引擎配置"""
        return self._config.engine

    def get_sweep_config(self) -> SweepConfigModel:
        """获取 sweep 配置"""
        return self._config.sweep

    def get_output_config(self) -> OutputConfigModel:
        """获取输出配置"""
        return self._config.output


# 全局配置管理器实例
_config_manager: ConfigManager | None = None


def get_config_manager() -> ConfigManager:
    """
    获取全局配置管理器

    Returns:
        ConfigManager实例

    Raises:
        RuntimeError: 配置未初始化
    """
    if _config_manager is None:
        raise RuntimeError("Config manager not initialized. Call initialize_config() first.")
    return _config_manager


def initialize_config(config_path: str | Path | None = None) -> ConfigManager:
    """
    初始化全局配置管理器

    Args:
        config_path: 配置文件路径；None 表示使用默认配置

    Returns:
        ConfigManager实例
    """
    global _config_manager
    if config_path is None:
        _config_manager = ConfigManager.defaults()
    else:
        _config_manager = ConfigManager.load_from_file(config_path)
    logger.info("Global config manager initialized")
    return _config_manager


def is_config_initialized() -> bool:
    """检查配置是否已初始化"""
    return _config_manager is not None
