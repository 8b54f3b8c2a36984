"""FastAPI application wrapping the analysis package.

Every endpoint is a stateless POST: a request model in, a report model out.
Domain errors surface as 422 responses; numerical failures as 500.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .. import __version__
from ..errors import (
    NetworkFormatError,
    NetworkInvalidError,
    NoWitnessError,
    NumericalError,
    UnsupportedVariantError,
)
from ..regions import region_csv, region_tsv
from . import handlers
from .models import (
    CentralityRequest,
    CentralityResponse,
    EquilibriumRequest,
    EquilibriumResponse,
    MarginalRequest,
    MarginalResponse,
    PayoffsRequest,
    PayoffsResponse,
    RegionRequest,
    RegionResponse,
    ReversalRequest,
    ReversalResponse,
    ShareRequest,
    ShareResponse,
    SimulateRequest,
    SimulateResponse,
    ValidateRequest,
    ValidateResponse,
    WelfareRequest,
    WelfareResponse,
)

_DOMAIN_ERRORS = (
    NetworkFormatError,
    NetworkInvalidError,
    UnsupportedVariantError,
    NoWitnessError,
    ValueError,
)


def create_app() -> FastAPI:
    app = FastAPI(title="netgame", version=__version__)

    @app.exception_handler(NumericalError)
    async def _numerical(request: Request, exc: NumericalError):
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    for err in _DOMAIN_ERRORS:

        @app.exception_handler(err)
        async def _domain(request: Request, exc: Exception):
            return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    @app.post("/validate", response_model=ValidateResponse)
    def validate(req: ValidateRequest):
        return handlers.validate_network(req)

    @app.post("/centrality", response_model=CentralityResponse)
    def centrality(req: CentralityRequest):
        return handlers.centrality(req)

    @app.post("/equilibrium", response_model=EquilibriumResponse)
    def equilibrium(req: EquilibriumRequest):
        return handlers.equilibrium(req)

    @app.post("/payoffs", response_model=PayoffsResponse)
    def payoffs(req: PayoffsRequest):
        return handlers.payoffs(req)

    @app.post("/welfare", response_model=WelfareResponse)
    def welfare(req: WelfareRequest):
        return handlers.welfare_report(req)

    @app.post("/marginal", response_model=MarginalResponse)
    def marginal(req: MarginalRequest):
        return handlers.marginal(req)

    @app.post("/share", response_model=ShareResponse)
    def share(req: ShareRequest):
        return handlers.share(req)

    @app.post("/region", response_model=RegionResponse)
    def region(req: RegionRequest):
        return handlers.region(req)

    @app.post("/region.csv", response_class=PlainTextResponse)
    def region_as_csv(req: RegionRequest):
        return region_csv(handlers.region_grid(req))

    @app.post("/region.tsv", response_class=PlainTextResponse)
    def region_as_tsv(req: RegionRequest):
        return region_tsv(handlers.region_grid(req))

    @app.post("/reversal", response_model=ReversalResponse)
    def reversal(req: ReversalRequest):
        return handlers.reversal(req)

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest):
        return handlers.simulate(req)

    return app
