#include <pybind11/pybind11.h>
PYBIND11_MODULE(_biconn, m) { m.doc() = "placeholder"; }
