#pragma once

#include <string>
#include <vector>

#include "pmfix/sample.hpp"
#include "pmfix/selfmap.hpp"
#include "pmfix/space.hpp"

namespace pmfix {

/// A bundled space/map pair with a default sample and documentation.
struct CatalogEntry {
    std::string id;
    PMetricSpace space;
    SelfMap map;
    SampleSet default_sample;
    std::string description;
};

/// The six catalog identifiers, in listing order.
const std::vector<std::string>& catalog_ids();

bool catalog_has(const std::string& id);

/// Throws Error for unknown ids.
CatalogEntry catalog_entry(const std::string& id);

}  // namespace pmfix
