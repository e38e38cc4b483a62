#pragma once

#include <string>

#include "apt/apt_format.hpp"

inline std::string fixture(const std::string& name) { return std::string(APT_FIXTURE_DIR) + "/" + name; }

inline apt::PetriNet n1() { return apt::read_document(fixture("net.apt")).net(); }
inline apt::Lts fig1() { return apt::read_document(fixture("lts.apt")).lts(); }
