"""
FastAPI server for the G2 Monge-Ampere pipeline.
Serves the pipeline reports read-only over HTTP.
"""

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from typing import Any, Dict, Optional
import logging
from datetime import datetime
import uvicorn

from main import PipelineOrchestrator
from models import OutputEnvelope
from utils import TOOL_VERSION, load_config, setup_logging

# Load configuration
config = load_config()

# Setup logging
setup_logging(config.get('log_level', 'INFO'))
logger = logging.getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="G2 Monge-Ampere API",
    description="Exact computations of G2-invariant Monge-Ampere equations",
    version=TOOL_VERSION
)

orchestrator = PipelineOrchestrator(config=config)


def _respond(result: Dict[str, Any]) -> OutputEnvelope:
    """Turn an orchestrator result into an envelope or the matching HTTP error."""
    if result['success']:
        logger.info(f"[{result['command']}] completed")
        return OutputEnvelope(command=result['command'], format='json', payload=result['payload'])

    logger.error(f"[{result['command']}] failed: {result.get('error')}")
    if result.get('kind') in ('usage', 'domain'):
        raise HTTPException(status_code=400, detail=result['error'])
    raise HTTPException(status_code=500, detail=result['error'])


@app.get("/api/roots", response_model=OutputEnvelope)
def roots():
    """G2 root system, Gram and Cartan matrices, invariant pairing on m."""
    return _respond(orchestrator.process_roots())


@app.get("/api/gradations", response_model=OutputEnvelope)
def gradations(algebra: str = 'g2', pi1: Optional[str] = None, flag: Optional[str] = None):
    """Level sets of the G2 gradations, or the graded table of an sl flag."""
    return _respond(orchestrator.process_gradations(algebra, pi1, flag))


@app.get("/api/invariants/{degree}", response_model=OutputEnvelope)
def invariants(degree: int):
    """Named basis of the invariant forms of one degree."""
    return _respond(orchestrator.process_invariants(degree))


@app.get("/api/forms", response_model=OutputEnvelope)
def forms():
    return _respond(orchestrator.process_forms())


@app.get("/api/equations", response_model=OutputEnvelope)
def equations(format: str = 'json', dictionary: Optional[str] = None):
    """The twelve Monge-Ampere equations."""
    return _respond(orchestrator.process_equations(format, dictionary))


@app.get("/api/classify", response_model=OutputEnvelope)
def classify(seed: Optional[int] = None, samples: Optional[int] = None):
    """Equivalence classes under tau and {tau, xi}, plus the Q1/L1 separation report."""
    return _respond(orchestrator.process_classify(seed, samples))


@app.get("/api/symbol/{name}", response_model=OutputEnvelope)
def symbol(name: str, point: Optional[str] = None, seed: Optional[int] = None, samples: Optional[int] = None):
    """Symbol rank of one equation, at a point or over seeded samples."""
    return _respond(orchestrator.process_symbol(name, point, seed, samples))


@app.get("/api/selftest", response_model=OutputEnvelope)
def selftest(seed: Optional[int] = None, samples: Optional[int] = None):
    """Run every certificate; HTTP 500 if any fails."""
    envelope = _respond(orchestrator.process_selftest(seed, samples))
    if not envelope.payload['passed']:
        failed = [c['name'] for c in envelope.payload['checks'] if not c['passed']]
        raise HTTPException(status_code=500, detail=f"certificates failed: {', '.join(failed)}")
    return envelope


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {
        "status": "healthy",
        "timestamp": datetime.utcnow().isoformat() + 'Z',
        "service": "g2mae-api"
    }


@app.get("/")
async def root():
    """Root endpoint with API information."""
    return {
        "service": "G2 Monge-Ampere API",
        "version": TOOL_VERSION,
        "endpoints": {
            "roots": "/api/roots",
            "gradations": "/api/gradations",
            "invariants": "/api/invariants/{degree}",
            "forms": "/api/forms",
            "equations": "/api/equations",
            "classify": "/api/classify",
            "symbol": "/api/symbol/{name}",
            "selftest": "/api/selftest",
            "health": "/health"
        },
        "documentation": "/docs"
    }


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """Global exception handler for unhandled errors."""
    logger.error(f"Unhandled exception: {str(exc)}", exc_info=True)
    return JSONResponse(
        status_code=500,
        content={
            "success": False,
            "message": "Internal server error",
            "timestamp": datetime.utcnow().isoformat() + 'Z'
        }
    )


def start_server(host: str = "0.0.0.0", port: int = 8000, reload: bool = False):
    """Start the FastAPI server."""
    logger.info(f"Starting G2 Monge-Ampere API on {host}:{port}")
    uvicorn.run("api_server:app", host=host, port=port, reload=reload)


if __name__ == "__main__":
    import sys

    # Parse command line arguments
    port = int(sys.argv[1]) if len(sys.argv) > 1 else 8000

    start_server(port=port, reload=True)
