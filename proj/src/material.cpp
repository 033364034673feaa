#include "wavebox/material.hpp"

// Header-only definitions; this TU anchors the module in the build.
