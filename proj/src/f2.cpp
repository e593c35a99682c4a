#include "jd/f2.hpp"

// Header-only for now; translation unit kept so the build has a stable home
// for future out-of-line F2 helpers.
