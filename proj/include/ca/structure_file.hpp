#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ca/connection.hpp"
#include "ca/courant.hpp"
#include "ca/parse.hpp"

namespace ca {

// Structure-definition files are line oriented.  '#' starts a comment, blank
// lines are ignored, and each block opens with a keyword line:
//
//   chart x y z                  (required, first block)
//   metric                       (matrix; rows of comma-separated expressions)
//   anchor | bivector | endomorphism   (matrices, same row format)
//   threeform <rank>             (lines "i j k expr", 0-based strict indices)
//   connection <coordinate>      (one matrix per coordinate)
//   sections                     (lines "name expr, expr, ...")
//   foliation                    (lines "leaf x y" and "transverse z")
//   dirac <n>                    (blocks "subspace name" / "form name" with
//                                 rows of comma-separated rationals)
//
// Expressions use the symbolic grammar of parse.hpp; errors carry 1-based
// file line/column positions.
struct SectionDef {
    std::string name;
    SVec comp;
};

struct DiracBlock {
    int n = 0;
    std::vector<std::pair<std::string, QMat>> subspaces;
    std::vector<std::pair<std::string, QMat>> forms;
};

struct StructureFile {
    Chart chart;
    std::optional<SMat> metric;
    std::optional<SMat> anchor;
    std::optional<SMat> bivector;
    std::optional<SMat> endomorphism;
    std::optional<EThreeForm> threeform;
    std::vector<SMat> connection;  // one Christoffel matrix per coordinate
    std::vector<SectionDef> sections;
    std::optional<Foliation> foliation;
    std::optional<DiracBlock> dirac;
};

StructureFile parse_structure(const std::string& text);
StructureFile parse_structure_file(const std::string& path);

// Canonical text; parse_structure(print_structure(sf)) reproduces sf.
std::string print_structure(const StructureFile& sf);

}  // namespace ca
