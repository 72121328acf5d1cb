from .app import build_app_from_env, create_app

__all__ = ["build_app_from_env", "create_app"]
