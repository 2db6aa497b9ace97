import sqlite3
from dataclasses import dataclass
from datetime import datetime
from typing import List, Optional


@dataclass(frozen=True)
class CatalogEntry:
    directory: str
    kind: str
    config_hash: str
    master_seed: int
    runs: int
    generations: int
    created_at: datetime
    p_max: Optional[float] = None
    delta: Optional[float] = None
    n_labels: Optional[int] = None


class ExperimentCatalog:
    def __init__(self, db_path: str):
        """
        Initialize the experiment catalog

        Args:
            db_path: Path to SQLite database file
        """
        self.db_path = db_path
        self._init_db()

    def _init_db(self):
        """Create database tables if they don't exist"""
        with sqlite3.connect(self.db_path) as conn:
            conn.execute("""
                CREATE TABLE IF NOT EXISTS experiments (
                    directory TEXT PRIMARY KEY,
                    kind TEXT NOT NULL,
                    config_hash TEXT NOT NULL,
                    master_seed TEXT NOT NULL,
                    runs INTEGER NOT NULL,
                    generations INTEGER NOT NULL,
                    created_at INTEGER NOT NULL,
                    p_max REAL,
                    delta REAL,
                    n_labels INTEGER
                )
            """)

    def _convert_to_entry(self, row: sqlite3.Row) -> CatalogEntry:
        """Convert a database row to a CatalogEntry"""
        return CatalogEntry(
            directory=row["directory"],
            kind=row["kind"],
            config_hash=row["config_hash"],
            # 64-bit seeds overflow SQLite's signed INTEGER
            master_seed=int(row["master_seed"]),
            runs=row["runs"],
            generations=row["generations"],
            created_at=datetime.fromtimestamp(row["created_at"]),
            p_max=row["p_max"],
            delta=row["delta"],
            n_labels=row["n_labels"],
        )

    def get_entry(self, directory: str) -> Optional[CatalogEntry]:
        """Get the entry recorded for an experiment directory"""
        with sqlite3.connect(self.db_path) as conn:
            conn.row_factory = sqlite3.Row
            cursor = conn.execute("SELECT * FROM experiments WHERE directory = ?", (directory,))
            row = cursor.fetchone()
            if row:
                return self._convert_to_entry(row)
        return None

    def record(self, entry: CatalogEntry):
        """Insert or replace the entry of an experiment directory"""
        with sqlite3.connect(self.db_path) as conn:
            conn.execute(
                """
                INSERT OR REPLACE INTO experiments
                (directory, kind, config_hash, master_seed, runs, generations, created_at, p_max, delta, n_labels)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            """,
                (
                    entry.directory,
                    entry.kind,
                    entry.config_hash,
                    str(entry.master_seed),
                    entry.runs,
                    entry.generations,
                    int(entry.created_at.timestamp()),
                    entry.p_max,
                    entry.delta,
                    entry.n_labels,
                ),
            )

    def remove_entry(self, directory: str):
        with sqlite3.connect(self.db_path) as conn:
            conn.execute("DELETE FROM experiments WHERE directory = ?", (directory,))

    def list_entries(self, kind: Optional[str] = None) -> List[CatalogEntry]:
        """List catalog entries, optionally of one kind"""
        with sqlite3.connect(self.db_path) as conn:
            conn.row_factory = sqlite3.Row
            if kind:
                cursor = conn.execute("SELECT * FROM experiments WHERE kind = ? ORDER BY directory", (kind,))
            else:
                cursor = conn.execute("SELECT * FROM experiments ORDER BY directory")
            return [self._convert_to_entry(row) for row in cursor.fetchall()]
