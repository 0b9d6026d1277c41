from builtins import Exception
import logging

from fastapi import FastAPI
from starlette.responses import JSONResponse

from app.dependencies import get_settings
from app.routers import clustering_routes
from app.utils.api_description import getDescription
from app.utils.common import setup_logging
from app.utils.errors import ClusteringError

settings = get_settings()
logger = logging.getLogger(__name__)

app = FastAPI(
    title=settings.api_title,
    description=getDescription(),
    version=settings.api_version,
    license_info={"name": "MIT", "url": "https://opensource.org/licenses/MIT"},
)


@app.on_event("startup")
async def startup_event():
    setup_logging()


@app.exception_handler(ClusteringError)
async def clustering_error_handler(request, exc: ClusteringError):
    return JSONResponse(status_code=400, content=exc.to_dict())


@app.exception_handler(Exception)
async def exception_handler(request, exc):
    logger.exception(f"Unhandled error on {request.url.path}: {exc}")
    return JSONResponse(status_code=500, content={"message": "An unexpected error occurred."})


app.include_router(clustering_routes.router)
