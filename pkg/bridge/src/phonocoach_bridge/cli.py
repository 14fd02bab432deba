"""Serve the bridge from the command line."""

from __future__ import annotations

import threading

import click

from .config import BridgeConfig
from .errors import BridgeAdapterError
from .service import create_app


@click.command()
@click.option("--recognizer", default="stub", show_default=True, help="Recognizer model id; 'none' disables /recognize.")
@click.option("--generator", default="stub", show_default=True, help="Generator model id; 'none' disables /generate.")
@click.option("--device", default="cpu", show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8100, show_default=True, type=int)
def main(recognizer: str, generator: str, device: str, host: str, port: int) -> None:
    """Run the model bridge until interrupted."""
    import uvicorn

    try:
        config = BridgeConfig(
            recognizer=None if recognizer == "none" else recognizer,
            generator=None if generator == "none" else generator,
            device=device,
            host=host,
            port=port,
        )
        app = create_app(config)
    except BridgeAdapterError as exc:
        raise click.UsageError(str(exc)) from exc
    server = uvicorn.Server(
        uvicorn.Config(app, host=config.host, port=config.port, log_level="warning")
    )
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    while not server.started:
        if not thread.is_alive():
            raise click.ClickException("bridge failed to start")
        thread.join(0.05)
    bound = server.servers[0].sockets[0].getsockname()
    click.echo(f"listening on http://{bound[0]}:{bound[1]}")
    click.echo("ready")
    try:
        thread.join()
    except KeyboardInterrupt:
        server.should_exit = True
        thread.join(5.0)


if __name__ == "__main__":
    main()
