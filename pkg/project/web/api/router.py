from fastapi.routing import APIRouter

from project.web.api import matching, monitoring, segmentation

api_router = APIRouter()
api_router.include_router(monitoring.router)
api_router.include_router(segmentation.router, tags=["segmentation"])
api_router.include_router(matching.router, tags=["matching"])
