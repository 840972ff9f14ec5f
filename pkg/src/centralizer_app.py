import sys
import logging
from pathlib import Path
from flask import Flask, request, jsonify
from flask_cors import CORS

# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from config import ALLOWED_ORIGINS, API_PORT, LOG_LEVEL
from lib.builtinDiagrams import builtin_diagram, builtin_names
from lib.coxeterDiagram import CoxeterDiagram
from lib.errors import ConflictingCertificates, DiagramError, NotSingleEdgeTree
from services.centralizer_service import CentralizerService

__version__ = "0.1.0"

logger = logging.getLogger(__name__)

app = Flask(__name__)

# Configure CORS explicitly to avoid browser preflight issues
if ALLOWED_ORIGINS.strip() == "*":
    # With wildcard origins, do NOT enable credentials
    CORS(app, resources={r"/*": {"origins": "*"}}, supports_credentials=False)
else:
    allowed_origins = [o.strip() for o in ALLOWED_ORIGINS.split(",") if o.strip()]
    CORS(app, resources={r"/*": {"origins": allowed_origins}}, supports_credentials=True)

@app.after_request
def add_cors_headers(response):
    response.headers.add("Access-Control-Allow-Headers", "Content-Type, Authorization")
    response.headers.add("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
    return response


def diagram_from_body(data: dict) -> CoxeterDiagram:
    """The request names either a builtin or carries a diagram in the JSON dictionary form."""
    if data.get('builtin'):
        return builtin_diagram(data['builtin'])
    if data.get('diagram'):
        return CoxeterDiagram.from_dict(data['diagram'])
    raise DiagramError("either 'diagram' or 'builtin' is required")


@app.route('/centralize', methods=['POST'])
def centralize():
    try:
        data = request.get_json(silent=True)

        if not data:
            return jsonify({'error': 'Sufficient data is not provided in the body'}), 400

        reflection = data.get('reflection')
        if not reflection:
            return jsonify({'error': 'Reflection is required'}), 400

        diagram = diagram_from_body(data)
        result = CentralizerService(diagram).centralizer_diagram(reflection)
        return jsonify(result.to_dict(all_words=bool(data.get('all_words')))), 200
    except ConflictingCertificates as e:
        logger.error(f"Certificate conflict: {e}")
        return jsonify({'error': str(e)}), 500
    except DiagramError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        logger.exception("centralize failed")
        return jsonify({'error': str(e)}), 500


@app.route('/blowup', methods=['POST'])
def blowup():
    try:
        data = request.get_json(silent=True)

        if not data:
            return jsonify({'error': 'Sufficient data is not provided in the body'}), 400

        domega = CentralizerService(diagram_from_body(data)).blowup_fast_path()
        return jsonify({'domega': domega.to_dict()}), 200
    except NotSingleEdgeTree as e:
        return jsonify({'error': str(e)}), 422
    except DiagramError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        logger.exception("blowup failed")
        return jsonify({'error': str(e)}), 500


@app.route('/builtin/<name>', methods=['GET'])
def builtin(name: str):
    try:
        return jsonify(builtin_diagram(name).to_dict()), 200
    except DiagramError as e:
        return jsonify({'error': str(e), 'known': builtin_names()}), 400


@app.route('/health', methods=['GET'])
def health():
    return jsonify({'status': 'ok'}), 200


@app.route('/version', methods=['GET'])
def version():
    return jsonify({'version': __version__}), 200


if __name__ == '__main__':
    logging.basicConfig(level=LOG_LEVEL)
    print("Starting Coxeter centralizer API server...")
    print(f"Server will be available at: http://127.0.0.1:{API_PORT}")
    app.run(debug=True, host='0.0.0.0', port=API_PORT)
