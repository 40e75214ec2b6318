#pragma once

#include <stdexcept>
#include <string>

namespace gtdyn {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define GTDYN_ERROR(Name)                                                \
    struct Name : Error {                                                \
        explicit Name(const std::string& what = #Name) : Error(what) {}  \
    }

GTDYN_ERROR(OutOfRange);
GTDYN_ERROR(CoverViolation);
GTDYN_ERROR(MetricShape);
GTDYN_ERROR(CapExceeded);
GTDYN_ERROR(NegativeTimeUnsupported);
GTDYN_ERROR(NotADevelopment);
GTDYN_ERROR(NotABijection);
GTDYN_ERROR(CyclicOrbitUnsupported);
GTDYN_ERROR(NotATopology);
GTDYN_ERROR(NoMetric);
GTDYN_ERROR(NotInvariant);
GTDYN_ERROR(ScaleBelowResolution);
GTDYN_ERROR(ParseError);
GTDYN_ERROR(BadParams);
GTDYN_ERROR(UnknownSuite);

#undef GTDYN_ERROR

}  // namespace gtdyn
