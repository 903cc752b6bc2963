import hashlib
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


@dataclass
class RunManifest:
    """Everything needed to rerun a command and check its outputs."""

    command: str
    config: dict
    master_seed: int | None = None
    version: str = __version__
    duration_seconds: float = 0.0
    files: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    started: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, path, root=None):
        path = Path(path)
        name = path.relative_to(root).as_posix() if root is not None else path.name
        self.files.append({"path": name, "sha256": sha256_file(path), "bytes": path.stat().st_size})

    def as_dict(self) -> dict:
        document = asdict(self)
        document.pop("started")
        # master seeds are u64; keep them exact for JSON readers with doubles
        document["master_seed"] = None if self.master_seed is None else str(self.master_seed)
        return document

    def write(self, path) -> Path:
        path = Path(path)
        self.duration_seconds = round(time.perf_counter() - self.started, 6)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n")
        logger.info("Manifest for %s lists %d files: %s", self.command, len(self.files), path)
        return path
