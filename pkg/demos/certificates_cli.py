"""
Certificates on the command line
================================

Emit a certificate, store it, verify it, then tamper with it.  Each call
goes through the same entry point as the ``tnfactor`` script.
"""

# %%
import json
import tempfile
from pathlib import Path

from tnfactor.cli import main

work = Path(tempfile.mkdtemp())
cert_path = work / "cert.json"
main(["factor", "--theorem", "2.2", "--x", "1,2,3", "--out", str(cert_path)])
print(cert_path.read_text())

# %%
main(["verify", "--certificate", str(cert_path)])

# %%
doc = json.loads(cert_path.read_text())
doc["factors"][0]["s"] = "7/3"
cert_path.write_text(json.dumps(doc))
status = main(["verify", "--certificate", str(cert_path)])
print("exit status", status)

# %%
# Neville elimination on a matrix that needs a row swap.
m = work / "swap.json"
m.write_text(json.dumps({"kind": "exact", "rows": 2, "cols": 2, "data": [["0", "1"], ["1", "0"]]}))
print("exit status", main(["factor", "--method", "neville", "--matrix", str(m)]))
