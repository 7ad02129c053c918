"""A tour of the command-line front end, run in-process.

Each block prints the command, its exit status and the first lines of
output.  Run: python3 demos/06_command_line.py
"""
import contextlib
import io
import os
import shlex
import tempfile

from fareywave.cli import dispatch


def show(cmd, lines=6):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = dispatch(shlex.split(cmd))
    print(f"$ fareywave {cmd}   [exit {code}]")
    text = out.getvalue().splitlines()
    for line in text[:lines]:
        print("   " + line)
    if len(text) > lines:
        print(f"   ... ({len(text)} lines)")
    for line in err.getvalue().splitlines()[-1:]:
        print("   stderr: " + line)
    print()


tmp = tempfile.mkdtemp()
coeffs = os.path.join(tmp, "coeffs.csv")
show("eval --fn phi --x 0")
show("eval --fn psi --convention piecewise --x 0,0.5,1")
show("tabulate --fn psi --lo -0.5 --hi 1.5 --n 401", 4)
show("fourier --fn gamma --grid 0:6.283185307179586:5")
show("admissibility --fn psi-tilde", 12)
show("admissibility --fn psi")
show("riesz --trials 500", 10)
show(f"cwt --synth bump:width=1,carrier=6 --grid -8:8:257 --fn psi-tilde --scales 0.125:4:8 -o {coeffs}")
show(f"reconstruct --input {coeffs} --grid -8:8:257 --fn psi-tilde", 3)
show(f"reconstruct --input {coeffs} --grid -8:8:257 --fn psi")
show("dwt --synth step:at=0.25 --grid -1:2:385 --fn haar --levels 0:2 --shifts 0:1", 8)
show("eval --fn farey --x 2")
show("verify", 3)
