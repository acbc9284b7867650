"""Database service for the run store"""
import json
from typing import Any, Dict, List, Optional

from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import Session

from src.config.database import get_database_config
from src.models.db_models import RunRecord
from src.utils.logger import get_logger

logger = get_logger(__name__)


class DatabaseService:
    """Service for run-store operations"""

    def __init__(self, db_url: Optional[str] = None):
        self.db_config = get_database_config(db_url)

    def get_session(self) -> Session:
        """Get database session"""
        return self.db_config.get_session()

    def record_run(
        self,
        command: str,
        node_count: int,
        edge_count: int,
        graph_path: Optional[str] = None,
        sample_count: Optional[int] = None,
        seed: Optional[int] = None,
        communities: Optional[int] = None,
        rmae: Optional[float] = None,
        rrmse: Optional[float] = None,
        timings: Optional[Dict[str, float]] = None,
        params: Optional[Dict[str, Any]] = None
    ) -> Optional[RunRecord]:
        """
        Store one run

        Returns:
            The stored record, or None when the store is unavailable
        """
        timings = timings or {}
        try:
            with self.get_session() as session:
                record = RunRecord(
                    command=command,
                    graph_path=graph_path,
                    node_count=node_count,
                    edge_count=edge_count,
                    sample_count=sample_count,
                    seed=seed,
                    communities=communities,
                    rmae=rmae,
                    rrmse=rrmse,
                    time_detect=timings.get("detect"),
                    time_fit=timings.get("fit"),
                    time_total=timings.get("total"),
                    params_json=json.dumps(params or {}, sort_keys=True)
                )
                session.add(record)
                session.commit()
                session.refresh(record)
                logger.info(f"💾 Recorded {command} run with ID: {record.id}")
                return record
        except SQLAlchemyError as e:
            logger.error(f"❌ Failed to record {command} run: {e}")
            return None

    def list_runs(self, limit: int = 20) -> List[RunRecord]:
        """Most recent runs first"""
        try:
            with self.get_session() as session:
                return (
                    session.query(RunRecord)
                    .order_by(RunRecord.id.desc())
                    .limit(limit)
                    .all()
                )
        except SQLAlchemyError as e:
            logger.error(f"Failed to list runs: {e}")
            return []

    def get_run(self, run_id: int) -> Optional[RunRecord]:
        """Get run by ID"""
        try:
            with self.get_session() as session:
                return session.query(RunRecord).filter(RunRecord.id == run_id).first()
        except SQLAlchemyError as e:
            logger.error(f"Failed to get run {run_id}: {e}")
            return None
