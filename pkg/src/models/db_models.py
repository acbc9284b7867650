"""SQLAlchemy database models for the run store"""
from sqlalchemy import create_engine, Column, Integer, String, Text, Float, TIMESTAMP
from sqlalchemy.orm import declarative_base, sessionmaker
from sqlalchemy.sql import func
from typing import Dict, Any
import json

Base = declarative_base()


class RunRecord(Base):
    """One recorded pipeline run"""
    __tablename__ = 'runs'

    id = Column(Integer, primary_key=True)
    command = Column(String(50), nullable=False)
    graph_path = Column(String(1000))
    node_count = Column(Integer, nullable=False)
    edge_count = Column(Integer, nullable=False)
    sample_count = Column(Integer)
    seed = Column(Integer)  # sampling seed; NULL for explicit id lists
    communities = Column(Integer)
    rmae = Column(Float)
    rrmse = Column(Float)
    time_detect = Column(Float)
    time_fit = Column(Float)
    time_total = Column(Float)
    params_json = Column(Text)
    created_at = Column(TIMESTAMP, server_default=func.now())

    @property
    def params(self) -> Dict[str, Any]:
        return json.loads(self.params_json) if self.params_json else {}

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            "id": self.id,
            "command": self.command,
            "graph_path": self.graph_path,
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "communities": self.communities,
            "rmae": self.rmae,
            "rrmse": self.rrmse,
            "time_s": {"detect": self.time_detect, "fit": self.time_fit, "total": self.time_total},
            "params": self.params,
            "created_at": self.created_at.isoformat() if self.created_at else None
        }


# Database configuration
class DatabaseConfig:
    """Database configuration and session management"""

    def __init__(self, db_url: str):
        self.engine = create_engine(db_url)
        self.SessionLocal = sessionmaker(autocommit=False, autoflush=False, expire_on_commit=False,
                                         bind=self.engine)

    def create_tables(self):
        """Create all tables"""
        Base.metadata.create_all(bind=self.engine)

    def get_session(self):
        """Get database session"""
        return self.SessionLocal()
