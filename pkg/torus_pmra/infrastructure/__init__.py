from .workers import run_chunks

__all__ = ["run_chunks"]
