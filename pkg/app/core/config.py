from enum import Enum

from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit configuration settings (env prefix ``EH_``)."""

    # Randomness
    seed: int = Field(default=0, ge=0, description="Master seed (EH_SEED)")

    # Block extraction constants
    epsilon: float = Field(default=1 / 500, gt=0, lt=1, description="Density threshold")
    delta: float = Field(default=1 / 100, gt=0, lt=1, description="Exponent constant")
    epsilon_safe: float = Field(
        default=1 / 5184, gt=0, lt=1, description="Fallback density threshold"
    )
    retry_cap: int = Field(default=1000, ge=1, description="Case-1 sampling retries")
    check_invariants: bool = Field(
        default=True, description="Assert main-algorithm properties after every step"
    )

    # Pipeline settings
    lambda_: float = Field(
        default=0.01, gt=0, lt=1, alias="EH_LAMBDA", description="Sparse/dense cut"
    )
    exact_cap: int = Field(default=24, ge=1, description="Brute-force Ramsey cap")
    separator_exact_cap: int = Field(
        default=22, ge=1, description="Largest n for exact separator search"
    )

    # Logging settings
    debug: bool = Field(default=False, description="Debug mode")
    log_level: str = Field(default="INFO", description="Logging level")
    log_file: str = Field(default="/tmp/eh_toolkit.log", description="Log file path")

    model_config = SettingsConfigDict(
        env_prefix="EH_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )


settings = Settings()


class AlgoConfig(BaseModel):
    """Constants of the block-extraction algorithms."""

    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(default=1 / 500, gt=0, lt=1)
    delta: float = Field(default=1 / 100, gt=0, lt=1)
    epsilon_safe: float = Field(default=1 / 5184, gt=0, lt=1)
    retry_cap: int = Field(default=1000, ge=1)
    seed: int = Field(default=0, ge=0)
    check_invariants: bool = True

    @classmethod
    def from_settings(cls, source: Settings = settings, **overrides) -> "AlgoConfig":
        values = {
            "epsilon": source.epsilon,
            "delta": source.delta,
            "epsilon_safe": source.epsilon_safe,
            "retry_cap": source.retry_cap,
            "seed": source.seed,
            "check_invariants": source.check_invariants,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_safe_epsilon(self) -> "AlgoConfig":
        return self.model_copy(update={"epsilon": self.epsilon_safe})


class SeparatorStrategy(str, Enum):
    EXACT = "exact"
    GREEDY = "greedy"
    AUTO = "auto"


class WitnessMode(str, Enum):
    PROVIDED = "provided"
    DIMENSION_TWO = "dimension-two"
    FAIL = "fail"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class PipelineConfig(BaseModel):
    """Configuration of the sparse/dense pipeline."""

    model_config = ConfigDict(frozen=True)

    lambda_: float = Field(default=0.01, gt=0, lt=1)
    algo: AlgoConfig = Field(default_factory=AlgoConfig)
    separator_strategy: SeparatorStrategy = SeparatorStrategy.AUTO
    separator_exact_cap: int = Field(default=22, ge=1)
    dense_witness: WitnessMode = WitnessMode.DIMENSION_TWO
    output_format: OutputFormat = OutputFormat.JSON

    @classmethod
    def from_settings(
        cls, source: Settings = settings, algo: AlgoConfig | None = None, **overrides
    ) -> "PipelineConfig":
        values = {
            "lambda_": source.lambda_,
            "algo": algo or AlgoConfig.from_settings(source),
            "separator_exact_cap": source.separator_exact_cap,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
