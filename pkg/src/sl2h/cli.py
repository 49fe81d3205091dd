"""Command line client for the matrix service.

Every subcommand builds a JSON request and sends it over HTTP.  By default
the service runs in-process (no socket, same wire format); pass --server to
talk to a remote instance instead.  Exit codes: 0 on success, 1 when
--assert is set and a violated certificate comes back, 2 on input or usage
errors (bad JSON, missing files, requests the service rejects).
"""

import json
import sys

import click

from .experiments import MODES


def _client(ctx):
    server = ctx.obj.get("server") if ctx.obj else None
    if server:
        import httpx
        return httpx.Client(base_url=server)
    import warnings
    with warnings.catch_warnings():
        # the testclient import warns about its own dependency pinning;
        # nothing a CLI user can act on
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app
    return TestClient(create_app())


def _load_json(path):
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise click.UsageError(str(exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.UsageError("invalid JSON input: %s" % exc)


def _matrix_payload(data):
    # accept both a bare [[a, b], [c, d]] array and {"matrix": ...}
    if isinstance(data, dict) and "matrix" in data:
        return data["matrix"]
    return data


def _post(ctx, path, payload):
    with _client(ctx) as client:
        response = client.post(path, json=payload)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        click.echo("error: %s" % detail, err=True)
        sys.exit(2)
    return response.json()


def _emit(data, output):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _finish_certificate(result, output, assert_mode):
    _emit(result, output)
    if assert_mode and result.get("verdict") == "violated":
        sys.exit(1)


input_option = click.option("--input", "input_path", default=None,
                            metavar="FILE.json",
                            help="Input file (defaults to stdin).")
output_option = click.option("--output", "output_path", default=None,
                             metavar="FILE", help="Write result here "
                             "instead of stdout.")
tol_option = click.option("--tol", type=float, default=None,
                          help="Override the operation's tolerance.")
assert_option = click.option("--assert", "assert_mode", is_flag=True,
                             help="Exit 1 if the certificate is violated.")


@click.group()
@click.version_option()
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; omit to run in-process.")
@click.pass_context
def main(ctx, server):
    """Quaternionic 2x2 matrices: determinants, classification,
    discreteness certificates, and perturbation experiments."""
    ctx.obj = {"server": server}


@main.command()
@input_option
@output_option
@click.pass_context
def det(ctx, input_path, output_path):
    """Absolute determinant of a matrix."""
    matrix = _matrix_payload(_load_json(input_path))
    _emit(_post(ctx, "/det", {"matrix": matrix}), output_path)


@main.command()
@input_option
@tol_option
@output_option
@click.pass_context
def inverse(ctx, input_path, tol, output_path):
    """Invert a matrix (entrywise closed form, embedding fallback)."""
    matrix = _matrix_payload(_load_json(input_path))
    payload = {"matrix": matrix}
    if tol is not None:
        payload["tol"] = tol
    _emit(_post(ctx, "/inverse", payload), output_path)


@main.command()
@input_option
@tol_option
@output_option
@click.pass_context
def classify(ctx, input_path, tol, output_path):
    """Dynamical type of a unit-determinant matrix."""
    matrix = _matrix_payload(_load_json(input_path))
    payload = {"matrix": matrix}
    if tol is not None:
        payload["tol"] = tol
    _emit(_post(ctx, "/classify", payload), output_path)


@main.command()
@input_option
@tol_option
@output_option
@click.pass_context
def fixedpoints(ctx, input_path, tol, output_path):
    """Boundary fixed points of the associated Mobius map."""
    matrix = _matrix_payload(_load_json(input_path))
    payload = {"matrix": matrix}
    if tol is not None:
        payload["tol"] = tol
    _emit(_post(ctx, "/fixedpoints", payload), output_path)


@main.command()
@input_option
@tol_option
@output_option
@assert_option
@click.pass_context
def jorgensen(ctx, input_path, tol, output_path, assert_mode):
    """Evaluate a discreteness inequality certificate.

    The input selects the test: {"test": "jorgensen_general", "lambda":
    [re, im], "mu": [re, im], "S": matrix-or-omitted, "bc_norm": float},
    {"test": "jorgensen_elliptic_hyperbolic", "S": matrix, "T": matrix}, or
    {"test": "shimizu_translation", "S": matrix, "mu": [w, x, y, z]}.
    """
    payload = _load_json(input_path)
    if not isinstance(payload, dict):
        raise click.UsageError("certificate input must be a JSON object")
    if tol is not None:
        payload["tol"] = tol
    _finish_certificate(_post(ctx, "/jorgensen", payload), output_path,
                        assert_mode)


@main.command()
@input_option
@tol_option
@output_option
@assert_option
@click.pass_context
def testmap(ctx, input_path, tol, output_path, assert_mode):
    """Admissibility certificate for a test map."""
    matrix = _matrix_payload(_load_json(input_path))
    payload = {"matrix": matrix}
    if tol is not None:
        payload["tol"] = tol
    _finish_certificate(_post(ctx, "/testmap", payload), output_path,
                        assert_mode)


@main.command()
@click.option("--mode", required=True, type=click.Choice(MODES),
              help="Which perturbation family to run.")
@input_option
@click.option("--seed", type=click.IntRange(min=0), default=None,
              help="Override the config seed.")
@tol_option
@click.option("--output", "output_path", default=None, metavar="FILE.jsonl",
              help="Write one record per line here; default stdout.")
@assert_option
@click.pass_context
def experiment(ctx, mode, input_path, seed, tol, output_path, assert_mode):
    """Run a perturbed-conjugation experiment and emit JSONL records.

    --input supplies an optional config object (seed, trials,
    sequence_length, perturbation_scale, z0, tolerances); --seed overrides
    its seed and --tol its limit-residual tolerance.  Records stream to
    --output as canonical JSONL, with the per-trial summary on stdout; with
    no --output the records themselves go to stdout.
    """
    config = _load_json(input_path) if input_path is not None else {}
    if not isinstance(config, dict):
        raise click.UsageError("config must be a JSON object")
    if seed is not None:
        config["seed"] = seed
    if tol is not None:
        tolerances = dict(config.get("tolerances", {}))
        tolerances["tol_identity"] = tol
        config["tolerances"] = tolerances
    result = _post(ctx, "/experiment", {"mode": mode, "config": config})
    lines = [json.dumps(record, sort_keys=True, separators=(",", ":"))
             for record in result["records"]]
    if output_path:
        with open(output_path, "w", encoding="utf-8") as fh:
            for line in lines:
                fh.write(line + "\n")
        summary = {"mode": result["mode"], "config": result["config"],
                   "trials": result["trials"], "output": output_path}
        _emit(summary, None)
    else:
        for line in lines:
            click.echo(line)
    if assert_mode and any(record["certificate"].get("verdict") == "violated"
                           for record in result["records"]):
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service on a socket."""
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
