"""HTTP surface over the entry pipeline.

Endpoints:
  POST /requests                       submit a flight-entry request
  GET  /requests/{id}                  the stored payload
  GET  /requests/{id}/case             evaluated safety-case instances
  GET  /requests/{id}/decision         the entry decision
  POST /requests/{id}/what-if          hypothetical re-evaluation
  GET  /templates                      catalog summary
  GET  /templates/{id}/required-evidence
  GET  /feature-model                  the active feature model

Response documents match docs/formats.md; every instance carries its
content-derived id and per-node trace links.
"""

from __future__ import annotations

from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .pipeline import EntryPipeline, InvalidConfigurationError, ValidationError
from .policy import PolicyError
from .store import NotFoundError


class MissionModel(BaseModel):
    missionId: str
    purpose: str
    plannedDuration: float = Field(gt=0)
    vlos: bool
    airspaceId: str
    requestedStart: str


class ConfigurationModel(BaseModel):
    selected: list[str] = []
    deselected: list[str] = []
    partial: bool = True


class BatteryStateModel(BaseModel):
    fullyCharged: Optional[bool] = None
    chargeFraction: Optional[float] = Field(default=None, ge=0, le=1)


class FlightRequestModel(BaseModel):
    requestId: Optional[str] = None
    pilotId: str
    vehicleModel: str
    mission: MissionModel
    configuration: ConfigurationModel = ConfigurationModel()
    batteryState: Optional[BatteryStateModel] = None
    declaredSpecOverrides: dict[str, Any] = {}

    def payload(self) -> dict:
        # exclude_unset keeps the stored document identical to what the client
        # sent, so content-derived request ids agree across CLI and HTTP
        return self.model_dump(exclude_unset=True, exclude_none=True)


class WhatIfModel(BaseModel):
    surfaceWind: Optional[float] = None
    gusts: Optional[float] = None
    temperature: Optional[float] = None
    visibility: Optional[Any] = None  # km or "unlimited"
    precipitation: Optional[str] = None
    vehicleModel: Optional[str] = None
    requestedStart: Optional[str] = None
    declaredSpecOverrides: Optional[dict[str, Any]] = None

    def overrides(self) -> dict:
        return {k: v for k, v in self.model_dump().items() if v is not None}


class SubmitResponse(BaseModel):
    requestId: str
    decision: dict
    instances: list[dict]


class WhatIfResponse(BaseModel):
    requestId: str
    hypothetical: bool = True
    decision: dict
    instances: list[dict]


def create_app(pipeline: EntryPipeline) -> FastAPI:
    app = FastAPI(title="safesple entry service", version="0.1.0")

    @app.exception_handler(NotFoundError)
    async def not_found(_: Request, exc: NotFoundError):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(ValidationError)
    async def bad_payload(_: Request, exc: ValidationError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.exception_handler(InvalidConfigurationError)
    async def bad_configuration(_: Request, exc: InvalidConfigurationError):
        return JSONResponse(
            status_code=422,
            content={"error": str(exc), "violations": list(exc.violations)},
        )

    @app.exception_handler(PolicyError)
    async def bad_policy(_: Request, exc: PolicyError):
        return JSONResponse(status_code=422, content={"error": str(exc)})

    @app.post("/requests", response_model=SubmitResponse)
    def submit_request(body: FlightRequestModel) -> SubmitResponse:
        result = pipeline.submit(body.payload())
        return SubmitResponse(
            requestId=result.request.request_id,
            decision=pipeline.get_decision(result.request.request_id),
            instances=pipeline.get_case(result.request.request_id),
        )

    @app.get("/requests/{request_id}")
    def get_request(request_id: str) -> dict:
        return pipeline.get_request(request_id)

    @app.get("/requests/{request_id}/case")
    def get_case(request_id: str) -> list[dict]:
        return pipeline.get_case(request_id)

    @app.get("/requests/{request_id}/decision")
    def get_decision(request_id: str) -> dict:
        return pipeline.get_decision(request_id)

    @app.post("/requests/{request_id}/what-if", response_model=WhatIfResponse)
    def what_if(request_id: str, body: WhatIfModel) -> WhatIfResponse:
        result = pipeline.what_if(request_id, body.overrides())
        return WhatIfResponse(
            requestId=request_id,
            decision=result.decision_doc(),
            instances=result.case_docs(),
        )

    @app.get("/templates")
    def templates() -> list[dict]:
        return pipeline.template_docs()

    @app.get("/templates/{template_id}/required-evidence")
    def template_required_evidence(template_id: str) -> dict:
        return pipeline.required_evidence_doc(template_id)

    @app.get("/feature-model")
    def feature_model() -> dict:
        return pipeline.feature_model_doc()

    return app
