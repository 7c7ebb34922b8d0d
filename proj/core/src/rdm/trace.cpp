#include "shieldlab/rdm/trace.hpp"

// Header-only for now; this TU pins the module into the library.
