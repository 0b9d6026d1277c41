from settings.config import Settings

def get_settings() -> Settings:
    """Return application settings."""
    return Settings()
