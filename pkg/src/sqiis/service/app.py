"""FastAPI application wrapping a loaded engine.

The engine is immutable after load, so one instance safely serves concurrent
requests. Domain errors surface as HTTP 400 with the exception class name.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..engine import Engine
from ..errors import SqiisError
from ..evaluation import report_as_dict, run_evaluation
from ..rulegen import enumerate_combinations
from ..tagger import TaggedQuery
from . import schemas


def _token_models(engine: Engine, tq: TaggedQuery) -> list[schemas.TokenModel]:
    return [
        schemas.TokenModel(
            surface=t.surface,
            start=t.start,
            word_count=t.word_count,
            tags=[engine.tags.id_at(p) for p in sorted(t.tags)],
        )
        for t in tq.tokens
    ]


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(
        title="sqiis",
        description="Short-query intent identification service.",
        version="0.1.0",
    )

    @app.exception_handler(SqiisError)
    async def domain_error_handler(request: Request, exc: SqiisError):
        payload = schemas.ErrorResponse(error=type(exc).__name__, detail=str(exc))
        return JSONResponse(status_code=400, content=payload.model_dump())

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse()

    @app.get("/config", response_model=schemas.ConfigResponse)
    def config():
        return schemas.ConfigResponse(
            tags=[
                schemas.RegistryEntry(id=i, description=d)
                for i, d in engine.tags.entries
            ],
            domains=[
                schemas.RegistryEntry(id=i, description=d)
                for i, d in engine.domains.entries
            ],
            rulebase_mode=engine.rulebase.mode.value,
            rule_count=len(engine.rulebase),
            lexicon_entries=len(engine.lexicons),
            candidate_cap=engine.cap,
        )

    @app.post("/tag", response_model=schemas.TagResponse)
    def tag(request: schemas.QueryRequest):
        tq = engine.tag(request.query)
        return schemas.TagResponse(query=tq.raw, tokens=_token_models(engine, tq))

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify(request: schemas.QueryRequest):
        result = engine.classify(request.query)
        return schemas.ClassifyResponse(
            query=request.query,
            outcome="domain" if result.is_domain else "no_domain",
            domain=(
                engine.domains.id_at(result.domain) if result.is_domain else None
            ),
            confidence=result.confidence,
            combination=(
                list(result.fired_combination.ids(engine.tags))
                if result.fired_combination is not None
                else None
            ),
            reason=result.reason,
            tokens=_token_models(engine, result.tagged),
            candidates=[
                schemas.CandidateModel(
                    combination=list(ts.ids(engine.tags)),
                    confidences=list(vec.values) if vec is not None else None,
                )
                for ts, vec in result.candidates
            ],
        )

    @app.get("/combinations", response_model=schemas.CombinationsResponse)
    def combinations():
        combos = enumerate_combinations(len(engine.tags))
        return schemas.CombinationsResponse(
            count=len(combos),
            combinations=[list(c.ids(engine.tags)) for c in combos],
        )

    @app.post("/evaluate", response_model=schemas.EvaluateResponse)
    def evaluate(request: schemas.EvaluateRequest):
        n = len(engine.tags)
        size_max = request.size_max if request.size_max is not None else min(6, n)
        report = run_evaluation(
            engine.rulebase, n, request.size_min, size_max, workers=request.workers
        )
        return schemas.EvaluateResponse(**report_as_dict(report, request.taus))

    return app
