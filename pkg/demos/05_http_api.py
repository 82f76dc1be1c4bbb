"""Walk the HTTP surface end to end against a temporary store, using the
in-process test client (no server needed).

Run:  python3 demos/05_http_api.py
For a real server:  gazereview serve --port 8000 --store <dir>
"""

import tempfile

from fastapi.testclient import TestClient

from gazereview.service import create_app
from gazereview.sim import ScenarioConfig, generate_session
from gazereview.store import Store

with tempfile.TemporaryDirectory() as root:
    store = Store(root)
    for i in range(2):
        cfg = ScenarioConfig(
            frame_count=300, fps=5.0, sigma_on=0.02, lookaway_rate=4.0,
            duration_range=(4, 12), lookaway_angle_range=(0.4, 0.8), sigma_ml=0.05,
            seed=50 + i,
        )
        session, gt = generate_session(cfg, session_id=f"demo-{i}")
        store.save_session(session, source="synthetic")

    client = TestClient(create_app(root))

    print("GET /api/sessions ->", [m["id"] for m in client.get("/api/sessions").json()])

    plot = client.get("/api/sessions/demo-0/plot").json()
    print(f"GET /plot -> {len(plot['points'])} points at {plot['fps']} fps")

    query = {"shape": {"type": "rectangle", "u_min": -0.2, "u_max": 0.2,
                       "v_min": -0.2, "v_max": 0.2}}
    resp = client.post("/api/sessions/demo-0/region-query", json=query).json()
    print(f"POST /region-query -> {len(resp['frames'])} frames, "
          f"{len(resp['highlight_ranges'])} highlight ranges")

    put = client.put("/api/sessions/demo-0/labels/human",
                     json={"intervals": [[10, 25], [100, 130]], "version": 0})
    print("PUT /labels/human -> version", put.json()["version"])

    stale = client.put("/api/sessions/demo-0/labels/human",
                       json={"intervals": [[5, 9]], "version": 0})
    print("stale PUT ->", stale.status_code, stale.json())

    got = client.get("/api/sessions/demo-0/labels/human").json()
    print("GET /labels/human ->", got["intervals"], "version", got["version"])
