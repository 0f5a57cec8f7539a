#pragma once

#include "refrec/zrat.hpp"

#include <string>

namespace refrec::exprio {

// Canonical JSON expression trees; round-trips are bit-identical because
// terms are kept in canonical sorted order and integers serialize in base 10.
std::string prat_to_json(const PRat& f);
PRat prat_from_json(const std::string& s);

std::string zrat_to_json(const ZRat& f);
ZRat zrat_from_json(const std::string& s);

// helpers exposed for composite documents
struct Json;
void* prat_to_node(const PRat& f, void* alloc);

} // namespace refrec::exprio
