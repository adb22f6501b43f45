"""Shared-library ABI: symbol table, generated header, and library builder.

``python -m nfftk.abi --build libnfftk.so`` compiles a real shared library
exporting the flat surface of :mod:`nfftk.cabi` with the ``nfftk_`` symbol
prefix (complex data as interleaved 64-bit float pairs, sizes as 32-bit
integers matching the plan fields).  The library embeds the Python runtime:
loaded from a non-Python host it starts an interpreter on first call (the
``nfftk`` package must be importable, e.g. via PYTHONPATH); loaded into an
existing Python process it reuses it.

``--emit-header`` / ``--emit-json`` regenerate the interface description
files shipped under ``include/`` and ``abi/``.  The ABI is versioned
semantically and independently of the package.
"""

import argparse
import json
import os
import sys

ABI_VERSION = "0.1.0"

# (name, return type, [(arg type, arg name), ...], summary)
FUNCTIONS = [
    ("nfftk_abi_version", "const char *", [], "semantic version of this ABI"),
    (
        "nfftk_create",
        "int32_t",
        [("const int32_t *", "bandlimits"), ("int32_t", "rank"), ("int32_t", "node_count")],
        "new plan with default parameters; returns handle > 0 or negative error code",
    ),
    (
        "nfftk_create_advanced",
        "int32_t",
        [
            ("const int32_t *", "bandlimits"),
            ("int32_t", "rank"),
            ("int32_t", "node_count"),
            ("const int32_t *", "fft_lengths"),
            ("int32_t", "cutoff"),
            ("uint32_t", "flags"),
            ("uint32_t", "fft_flags"),
        ],
        "new plan with explicit grid, cutoff and flag words",
    ),
    (
        "nfftk_set_x",
        "int32_t",
        [("int32_t", "handle"), ("const double *", "coords"), ("int64_t", "len")],
        "copy node_count*rank coordinates in [-1/2,1/2) and precompute",
    ),
    (
        "nfftk_set_fhat",
        "int32_t",
        [("int32_t", "handle"), ("const double *", "values"), ("int64_t", "len")],
        "copy prod(bandlimits) complex coefficients, interleaved re/im",
    ),
    (
        "nfftk_set_f",
        "int32_t",
        [("int32_t", "handle"), ("const double *", "values"), ("int64_t", "len")],
        "copy node_count complex samples, interleaved re/im",
    ),
    ("nfftk_trafo", "int32_t", [("int32_t", "handle")], "forward transform into the sample buffer"),
    ("nfftk_adjoint", "int32_t", [("int32_t", "handle")], "adjoint transform into the coefficient buffer"),
    (
        "nfftk_get_f",
        "const double *",
        [("int32_t", "handle")],
        "pointer to the plan-owned sample buffer (2*node_count doubles); NULL if invalid",
    ),
    (
        "nfftk_get_fhat",
        "const double *",
        [("int32_t", "handle")],
        "pointer to the plan-owned coefficient buffer (2*prod(bandlimits) doubles); NULL if invalid",
    ),
    ("nfftk_last_error", "int32_t", [("int32_t", "handle")], "error code of the last failing call"),
    (
        "nfftk_last_error_message",
        "const char *",
        [("int32_t", "handle")],
        "message for the last failing call; valid until the next call on the handle",
    ),
    ("nfftk_destroy", "int32_t", [("int32_t", "handle")], "release the plan; exactly one per create"),
]

ERROR_CODES = {
    "NFFTK_ERR_HANDLE": -1,
    "NFFTK_ERR_SHAPE": -2,
    "NFFTK_ERR_DOMAIN": -3,
    "NFFTK_ERR_INTERNAL": -9,
}


def _signature(name, ret, args):
    arglist = ", ".join(f"{t} {n}" for t, n in args) if args else "void"
    return f"{ret} {name}({arglist});"


def header_text():
    lines = [
        "/* nfftk shared-library interface (generated by nfftk.abi; do not edit). */",
        "#ifndef NFFTK_H",
        "#define NFFTK_H",
        "",
        "#include <stdint.h>",
        "",
        f'#define NFFTK_ABI_VERSION "{ABI_VERSION}"',
        "",
    ]
    for macro, value in ERROR_CODES.items():
        lines.append(f"#define {macro} ({value})")
    lines += [
        "",
        "#ifdef __cplusplus",
        'extern "C" {',
        "#endif",
        "",
        "/* Complex buffers are interleaved (re, im) float64 pairs.  Handles are",
        "   opaque positive integers; a handle must not be used from two threads",
        "   at once.  Buffer pointers stay valid until nfftk_destroy. */",
        "",
    ]
    for name, ret, args, doc in FUNCTIONS:
        lines.append(f"/* {doc} */")
        lines.append(_signature(name, ret, args))
        lines.append("")
    lines += ["#ifdef __cplusplus", "}", "#endif", "", "#endif /* NFFTK_H */", ""]
    return "\n".join(lines)


def interface_json():
    doc = {
        "abi_version": ABI_VERSION,
        "symbol_prefix": "nfftk_",
        "complex_layout": "interleaved float64 (re, im)",
        "error_codes": ERROR_CODES,
        "defaults": {
            "cutoff": 8,
            "fft_length_rule": "per dimension: 2^(ceil(log2 N)+1), widened until 2*cutoff+1 <= n",
            "f1": "PRE_PHI_HUT|PRE_PSI|NFFT_SORT_NODES|MALLOC_X|MALLOC_F_HAT|MALLOC_F|"
                  "FFTW_INIT|FFT_OUT_OF_PLACE (+NFFT_OMP_BLOCKWISE_ADJOINT for rank > 1)",
            "f2": "FFTW_ESTIMATE|FFTW_DESTROY_INPUT",
            "window": "kaiserbessel",
        },
        "functions": [
            {
                "name": name,
                "returns": ret,
                "args": [{"type": t, "name": n} for t, n in args],
                "doc": doc_,
            }
            for name, ret, args, doc_ in FUNCTIONS
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


_EMBED_DECLS = "\n".join(_signature(*f[:3]) for f in FUNCTIONS)

_EMBED_INIT = """
from _nfftk_abi import ffi

import numpy as np

import nfftk.cabi as cabi

_messages = {}
_version = ffi.new("char[]", b"%(version)s")


def _keep_message(handle, text):
    buf = ffi.new("char[]", text.encode())
    _messages[handle] = buf
    return buf


def _doubles(ptr, count):
    if count < 0:
        return None
    return np.frombuffer(ffi.buffer(ptr, 8 * count), dtype=np.float64).copy()


def _ints(ptr, count):
    return [int(ptr[i]) for i in range(count)]


@ffi.def_extern()
def nfftk_abi_version():
    return _version


@ffi.def_extern()
def nfftk_create(bandlimits, rank, node_count):
    if rank < 1:
        return -3
    return cabi.create(_ints(bandlimits, rank), rank, node_count)


@ffi.def_extern()
def nfftk_create_advanced(bandlimits, rank, node_count, fft_lengths, cutoff, flags, fft_flags):
    if rank < 1:
        return -3
    return cabi.create_advanced(
        _ints(bandlimits, rank), rank, node_count,
        _ints(fft_lengths, rank), cutoff, flags, fft_flags,
    )


@ffi.def_extern()
def nfftk_set_x(handle, coords, length):
    buf = _doubles(coords, length)
    if buf is None:
        return -2
    return cabi.set_x(handle, buf, length)


@ffi.def_extern()
def nfftk_set_fhat(handle, values, length):
    buf = _doubles(values, length)
    if buf is None:
        return -2
    return cabi.set_fhat(handle, buf, length)


@ffi.def_extern()
def nfftk_set_f(handle, values, length):
    buf = _doubles(values, length)
    if buf is None:
        return -2
    return cabi.set_f(handle, buf, length)


@ffi.def_extern()
def nfftk_trafo(handle):
    return cabi.trafo(handle)


@ffi.def_extern()
def nfftk_adjoint(handle):
    return cabi.adjoint(handle)


@ffi.def_extern()
def nfftk_get_f(handle):
    arr = cabi.get_f(handle)
    if arr is None:
        return ffi.NULL
    return ffi.cast("const double *", arr.ctypes.data)


@ffi.def_extern()
def nfftk_get_fhat(handle):
    arr = cabi.get_fhat(handle)
    if arr is None:
        return ffi.NULL
    return ffi.cast("const double *", arr.ctypes.data)


@ffi.def_extern()
def nfftk_last_error(handle):
    return cabi.last_error(handle)[0]


@ffi.def_extern()
def nfftk_last_error_message(handle):
    return _keep_message(handle, cabi.last_error(handle)[1])


@ffi.def_extern()
def nfftk_destroy(handle):
    _messages.pop(handle, None)
    return cabi.destroy(handle)
"""


def build_library(target, tmpdir=None, verbose=False):
    """Compile the embedded shared library to ``target``; returns its path."""
    import cffi

    target = os.path.abspath(target)
    tmpdir = tmpdir or os.path.join(os.path.dirname(target) or ".", "_abi_build")
    os.makedirs(tmpdir, exist_ok=True)
    ffi = cffi.FFI()
    ffi.embedding_api(_EMBED_DECLS)  # cdef dialect: stdint names are built in
    ffi.set_source("_nfftk_abi", "#include <stdint.h>")
    ffi.embedding_init_code(_EMBED_INIT % {"version": ABI_VERSION})
    out = ffi.compile(tmpdir=tmpdir, target=target, verbose=verbose)
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(prog="python -m nfftk.abi", description=__doc__)
    parser.add_argument("--emit-header", metavar="PATH", default=None)
    parser.add_argument("--emit-json", metavar="PATH", default=None)
    parser.add_argument("--build", metavar="PATH", default=None, help="compile the shared library")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args(argv)
    did = False
    if args.emit_header:
        with open(args.emit_header, "w") as fh:
            fh.write(header_text())
        did = True
    if args.emit_json:
        with open(args.emit_json, "w") as fh:
            fh.write(interface_json())
        did = True
    if args.build:
        path = build_library(args.build, verbose=args.verbose)
        print(path)
        did = True
    if not did:
        parser.error("nothing to do: pass --emit-header, --emit-json or --build")
    return 0


if __name__ == "__main__":
    sys.exit(main())
