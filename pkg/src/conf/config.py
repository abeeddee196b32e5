from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    zero_tol: float = 1e-10
    match_tol: float = 1e-8
    seed: int = 42
    output_format: str = "text"
    selftest_cases: int = 20
    oracle_max_edges: int = 20
    log_level: str = "WARNING"

    class Config:
        env_prefix = "oblique_kit_"
        env_file = ".env"
        env_file_encoding = "utf-8"


settings = Settings()
