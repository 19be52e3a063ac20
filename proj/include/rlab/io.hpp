#pragma once

#include <rlab/digraph.hpp>
#include <rlab/tournament.hpp>

#include <optional>
#include <string>

namespace rlab
{
    struct DigraphFile
    {
        Digraph graph;
        std::optional<Layering> layering;
    };

    auto write_dgraph(const Digraph & g, const Layering * layering) -> std::string;
    auto read_dgraph(const std::string & text) -> DigraphFile;

    // upper-triangle bits, row-major, first pair in the most significant bit of the first hex digit
    auto tournament_hex(const Tournament & t) -> std::string;
    auto tournament_from_hex(int n, const std::string & hex) -> Tournament;

    auto write_tourn(const Tournament & t) -> std::string;
    auto read_tourn(const std::string & text) -> Tournament;

    auto tournament_dot(const Tournament & t) -> std::string;
    auto digraph_dot(const Digraph & g, const Layering * layering) -> std::string;

    auto read_file(const std::string & path) -> std::string;
    auto write_file(const std::string & path, const std::string & contents) -> void;
}
