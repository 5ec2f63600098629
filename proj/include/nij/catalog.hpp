#pragma once

#include "nij/nijenhuis.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nij {

// Missing or malformed catalog data.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CatalogEntry {
  std::string id;
  std::size_t dim = 0;
  std::uint64_t radicand = 0;  // 0: rational entry
  std::vector<std::string> vars;
  PolyMatrix op;
  SigmaSet sigmas;
  StructureConstants relations;
  // Target coordinates as linear forms in this entry's coordinates; the
  // operator in target coordinates is change_coordinates(op, inverse(change)).
  std::optional<ScalarMatrix> change;
  std::optional<std::string> target;
  std::optional<std::string> sign_variant;
};

std::vector<CatalogEntry> parse_catalog(const std::string& json_text);
std::vector<CatalogEntry> load_catalog(const std::string& path);
std::string entry_json(const CatalogEntry& e, int indent = -1);
// Canonical serialization; parse_catalog(dump_catalog(c)) reproduces c.
std::string dump_catalog(const std::vector<CatalogEntry>& entries);

// "⊕" may be typed as "+": "b4++d" names "b4+⊕d".
std::string canonical_id(const std::string& id);
std::vector<const CatalogEntry*> find_entries(const std::vector<CatalogEntry>& all, const std::string& id);

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyReport {
  std::string id;
  std::optional<std::string> sign_variant;
  std::vector<Check> checks;
  bool ok() const;
  const Check* find(const std::string& name) const;
};

// torsion, charpoly, relations, nondegenerate, eq1, radicand and, when a
// change is recorded, change (its target is looked up in catalog).
VerifyReport verify_entry(const CatalogEntry& e, const std::vector<CatalogEntry>& catalog = {});
// Runs verify_entry on several threads; reports keep the input order.
std::vector<VerifyReport> verify_all(const std::vector<const CatalogEntry*>& entries,
                                     const std::vector<CatalogEntry>& catalog, unsigned workers);

// n-dimensional families. Sigmas and relations come from the closed forms,
// the operator from the displayed matrix, so verify_entry cross-checks them.
CatalogEntry generalized_L1(std::size_t n);
CatalogEntry generalized_L2(std::size_t n);
CatalogEntry generalized_blocks(std::size_t n, const std::vector<int>& signs);
// The block operator alone. printed_reading puts x_{j+1} in the lower-left
// corner of block j, as in the printed display.
PolyMatrix blocks_operator(std::size_t n, const std::vector<int>& signs, bool printed_reading = false);

}  // namespace nij
