"""Run-store database configuration and setup"""
from typing import Optional

from src.config.settings import config
from src.models.db_models import DatabaseConfig


def get_database_url() -> str:
    """Run-store URL from GBFPUM_RUNS_DB_URL (SQLite file by default)"""
    db_url = config.RUNS_DB_URL
    if not db_url:
        raise ValueError("GBFPUM_RUNS_DB_URL is empty")
    return db_url


def get_database_config(db_url: Optional[str] = None) -> DatabaseConfig:
    """Get configured database instance with its tables created"""
    db_config = DatabaseConfig(db_url or get_database_url())
    db_config.create_tables()
    return db_config
