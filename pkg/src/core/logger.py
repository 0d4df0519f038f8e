"""
Logger - stderr logging setup and the SQLite run store
Thread-safe recording of verification runs and their checks
"""
import json
import logging
import os
import sqlite3
import sys
from datetime import datetime
from threading import Lock
from typing import Any, Dict, List, Optional

from src.core.report import CheckReport

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"

_configured = False


def setup_logging(level: str = "WARNING") -> None:
    """Configure the root handler on stderr once; later calls only adjust the level"""
    global _configured
    root = logging.getLogger()
    root.setLevel(getattr(logging, str(level).upper(), logging.WARNING))
    if _configured:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    _configured = True


class RunLogger:
    """Run store for verification results"""

    def __init__(self, db_path: str = "logs/nclogic_runs.db"):
        self.db_path = db_path
        self.lock = Lock()
        self._ensure_db_dir()
        self._init_database()

    def _ensure_db_dir(self):
        """Ensure logs directory exists"""
        db_dir = os.path.dirname(self.db_path)
        if db_dir and not os.path.exists(db_dir):
            try:
                os.makedirs(db_dir, exist_ok=True)
            except (FileExistsError, OSError):
                pass

    def _init_database(self):
        """Initialize database schema"""
        with self.lock:
            conn = sqlite3.connect(self.db_path)
            cursor = conn.cursor()

            cursor.execute('''
                CREATE TABLE IF NOT EXISTS runs (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    command TEXT NOT NULL,
                    seed INTEGER,
                    options TEXT,
                    start_time TEXT NOT NULL,
                    end_time TEXT,
                    status TEXT
                )
            ''')

            cursor.execute('''
                CREATE TABLE IF NOT EXISTS checks (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    run_id INTEGER NOT NULL,
                    name TEXT NOT NULL,
                    passed INTEGER NOT NULL,
                    checked INTEGER NOT NULL,
                    failures INTEGER NOT NULL,
                    payload TEXT,
                    FOREIGN KEY (run_id) REFERENCES runs(id)
                )
            ''')

            cursor.execute('''
                CREATE INDEX IF NOT EXISTS idx_checks_run
                ON checks(run_id)
            ''')

            conn.commit()
            conn.close()

    def start_run(self, command: str, seed: Optional[int] = None,
                  options: Optional[Dict[str, Any]] = None) -> int:
        """Start new run and return run_id"""
        with self.lock:
            conn = sqlite3.connect(self.db_path)
            cursor = conn.cursor()

            timestamp = datetime.now().isoformat()
            cursor.execute('''
                INSERT INTO runs (command, seed, options, start_time)
                VALUES (?, ?, ?, ?)
            ''', (command, seed, json.dumps(options or {}, sort_keys=True, default=str), timestamp))

            run_id = cursor.lastrowid
            conn.commit()
            conn.close()

            return run_id

    def end_run(self, run_id: int, status: str):
        """End run with 'pass', 'fail' or 'error'"""
        with self.lock:
            conn = sqlite3.connect(self.db_path)
            cursor = conn.cursor()

            timestamp = datetime.now().isoformat()
            cursor.execute('''
                UPDATE runs SET end_time = ?, status = ? WHERE id = ?
            ''', (timestamp, status, run_id))

            conn.commit()
            conn.close()

    def log_check(self, run_id: int, report: CheckReport):
        """Store one check report"""
        with self.lock:
            conn = sqlite3.connect(self.db_path)
            cursor = conn.cursor()

            cursor.execute('''
                INSERT INTO checks (run_id, name, passed, checked, failures, payload)
                VALUES (?, ?, ?, ?, ?, ?)
            ''', (run_id, report.check, int(report.passed), report.checked, report.failure_count,
                  json.dumps(report.to_dict(), sort_keys=True, default=str)))

            conn.commit()
            conn.close()

    def get_runs(self, command: Optional[str] = None, limit: int = 100) -> List[Dict[str, Any]]:
        """Get run list, newest first"""
        with self.lock:
            conn = sqlite3.connect(self.db_path)
            conn.row_factory = sqlite3.Row
            cursor = conn.cursor()

            query = "SELECT * FROM runs WHERE 1=1"
            params: List[Any] = []

            if command:
                query += " AND command = ?"
                params.append(command)

            query += " ORDER BY id DESC LIMIT ?"
            params.append(limit)

            cursor.execute(query, params)
            rows = cursor.fetchall()
            conn.close()

            return [dict(row) for row in rows]

    def get_checks(self, run_id: int, failed_only: bool = False) -> List[Dict[str, Any]]:
        """Get the checks of one run"""
        with self.lock:
            conn = sqlite3.connect(self.db_path)
            conn.row_factory = sqlite3.Row
            cursor = conn.cursor()

            query = "SELECT * FROM checks WHERE run_id = ?"
            if failed_only:
                query += " AND passed = 0"
            cursor.execute(query + " ORDER BY id", (run_id,))
            rows = cursor.fetchall()
            conn.close()

            return [dict(row) for row in rows]

    def clear_runs(self):
        """Delete every run and check"""
        with self.lock:
            conn = sqlite3.connect(self.db_path)
            cursor = conn.cursor()
            cursor.execute("DELETE FROM checks")
            cursor.execute("DELETE FROM runs")
            conn.commit()
            conn.close()

    def get_database_size(self) -> int:
        """Get database size in bytes"""
        if os.path.exists(self.db_path):
            return os.path.getsize(self.db_path)
        return 0

    def vacuum_database(self):
        """Optimize database"""
        with self.lock:
            conn = sqlite3.connect(self.db_path)
            cursor = conn.cursor()
            cursor.execute("VACUUM")
            conn.close()
