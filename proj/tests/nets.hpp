#pragma once

// Shared fixture nets used across test files.

namespace fixtures {

// Reduces to an isomorphic copy of itself: opening the first box makes two
// copies of its contents (one lands inside the second box, one at ground) and
// the axiom merge inside the second box completes the loop.
inline const char* OKADA =
    "(net (concl)"
    " (bang -> mO (box (net (concl wt)"
    "   (bang -> mq (aux ab) (box (net (concl av as) (ax av b) (flat b -> as)))"
    "     (map (ab = as)))"
    "   (flat mq -> s)"
    "   (why s ab -> wt))))"
    " (bang -> mD (aux ad) (box (net (concl dv ds) (ax dv db) (flat db -> ds)))"
    "   (map (ad = ds)))"
    " (flat mD -> p2)"
    " (why ad p2 -> uW)"
    " (cut mO uW))";

// A unit conclusion beside a box holding the looping net (capped with a unit
// for its conclusion), cut against an empty why: normalizable by erasing the
// box, yet with unbounded reductions inside it.
inline const char* PI_PRIME =
    "(net (concl c1)"
    " (one c1)"
    " (bang -> mo (box (net (concl oc)"
    "   (bang -> mO (box (net (concl wt)"
    "     (bang -> mq (aux ab) (box (net (concl av as) (ax av b) (flat b -> as)))"
    "       (map (ab = as)))"
    "     (flat mq -> s)"
    "     (why s ab -> wt))))"
    "   (bang -> mD (aux ad) (box (net (concl dv ds) (ax dv db) (flat db -> ds)))"
    "     (map (ad = ds)))"
    "   (flat mD -> p2)"
    "   (why ad p2 -> uW)"
    "   (cut mO uW)"
    "   (one oc))))"
    " (why -> u0)"
    " (cut mo u0))";

} // namespace fixtures
