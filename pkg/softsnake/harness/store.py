"""Result stores that receive experiment outputs."""

import logging
import threading
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, List, Union

from ..core.exceptions import StorageError

logger = logging.getLogger(__name__)


class ResultStore(ABC):
    """Abstract base class for experiment output stores.

    Names are relative paths such as ``"gait/metrics.json"``.
    """

    def __init__(self, **kwargs):
        self.name = self.__class__.__name__
        self._config = kwargs

    @abstractmethod
    def write_bytes(self, name: str, data: bytes) -> None:
        """Store ``data`` under ``name``, replacing any previous content.

        Raises:
            StorageError: If the write fails
        """
        pass

    @abstractmethod
    def read_bytes(self, name: str) -> bytes:
        """Content stored under ``name``.

        Raises:
            StorageError: If nothing is stored under the name
        """
        pass

    @abstractmethod
    def exists(self, name: str) -> bool:
        pass

    @abstractmethod
    def list_names(self) -> List[str]:
        """All stored names, sorted."""
        pass

    def write_text(self, name: str, text: str) -> None:
        self.write_bytes(name, text.encode("utf-8"))

    def read_text(self, name: str) -> str:
        return self.read_bytes(name).decode("utf-8")


class InMemoryStore(ResultStore):
    """In-memory store for testing."""

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        self._files: Dict[str, bytes] = {}
        self._lock = threading.RLock()

    def write_bytes(self, name: str, data: bytes) -> None:
        with self._lock:
            self._files[name] = bytes(data)

    def read_bytes(self, name: str) -> bytes:
        with self._lock:
            if name not in self._files:
                raise StorageError(f"No result named {name}", "read", self.name)
            return self._files[name]

    def exists(self, name: str) -> bool:
        with self._lock:
            return name in self._files

    def list_names(self) -> List[str]:
        with self._lock:
            return sorted(self._files)

    def clear(self) -> None:
        """Remove everything (for testing)."""
        with self._lock:
            self._files.clear()


class DirectoryStore(ResultStore):
    """Store backed by a directory on disk, created on first use."""

    def __init__(self, root: Union[str, Path], **kwargs):
        super().__init__(**kwargs)
        self.root = Path(root)

    def _path(self, name: str) -> Path:
        path = (self.root / name).resolve()
        if self.root.resolve() not in path.parents:
            raise StorageError(f"Result name {name} escapes {self.root}", "resolve", self.name)
        return path

    def write_bytes(self, name: str, data: bytes) -> None:
        path = self._path(name)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
        except OSError as e:
            raise StorageError(f"Failed to write {path}: {e}", "write", self.name) from e
        logger.debug(f"Wrote {path} ({len(data)} bytes)")

    def read_bytes(self, name: str) -> bytes:
        path = self._path(name)
        try:
            return path.read_bytes()
        except OSError as e:
            raise StorageError(f"Failed to read {path}: {e}", "read", self.name) from e

    def exists(self, name: str) -> bool:
        return self._path(name).is_file()

    def list_names(self) -> List[str]:
        if not self.root.is_dir():
            return []
        return sorted(p.relative_to(self.root).as_posix() for p in self.root.rglob("*") if p.is_file())
