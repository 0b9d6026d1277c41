from builtins import bool, float, int, str
from pydantic import Field
from pydantic_settings import BaseSettings

class Settings(BaseSettings):
    # Solver defaults
    default_seed: int = Field(default=0, description="Seed used when none is given on the command line")
    default_trials: int = Field(default=1, description="Number of independent pipeline trials (best-of)")
    default_lambda: float = Field(default=0.0, description="Per-cluster regularization when none is given")

    # Exhaustive search limits
    oracle_max_vertices: int = Field(default=12, description="Largest vertex count the partition oracle accepts")
    exact_cvwap_max_t: int = Field(default=12, description="Largest T-side the exact CVWAP solver accepts")
    restricted_oracle_max_vertices: int = Field(default=12, description="Largest |S|+|T| for the restricted oracle")
    tie_tolerance: float = Field(default=1e-9, description="Float window inside which oracle values are re-compared exactly")

    # Sorting
    radix_poly_degree: int = Field(default=3, description="Integral sort keys up to (n+1)**degree take the radix path")
    radix_digit_bits: int = Field(default=16, description="Digit width of the LSD radix sort")

    debug: bool = Field(default=False, description="Debug mode logs per-stage sizes")
    api_title: str = Field(default="Ratio Clustering", description="Title of the HTTP API")
    api_version: str = Field(default="0.1.0", description="Version reported by the HTTP API")

    class Config:
        # If your .env file is not in the root directory, adjust the path accordingly.
        env_file = ".env"
        env_file_encoding = 'utf-8'

# Instantiate settings to be imported in your application
settings = Settings()
