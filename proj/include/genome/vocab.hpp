#pragma once
// Well-known vocabulary IRIs used across the toolkit.

#include "genome/term.hpp"

namespace genome::vocab {

inline constexpr const char* rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* rdfs_ns = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* owl_ns = "http://www.w3.org/2002/07/owl#";
inline constexpr const char* xsd_ns = "http://www.w3.org/2001/XMLSchema#";

// Tool namespace for rigidity tags and export provenance.
inline constexpr const char* genome_ns = "http://genome-kit.org/ns#";

inline constexpr const char* rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* rdfs_subclass_of = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr const char* rdfs_subproperty_of = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr const char* rdfs_domain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr const char* rdfs_range = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr const char* rdfs_label = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr const char* rdfs_comment = "http://www.w3.org/2000/01/rdf-schema#comment";
inline constexpr const char* rdfs_class = "http://www.w3.org/2000/01/rdf-schema#Class";

inline constexpr const char* owl_class = "http://www.w3.org/2002/07/owl#Class";
inline constexpr const char* owl_object_property = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr const char* owl_datatype_property = "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr const char* owl_annotation_property = "http://www.w3.org/2002/07/owl#AnnotationProperty";
inline constexpr const char* owl_named_individual = "http://www.w3.org/2002/07/owl#NamedIndividual";
inline constexpr const char* owl_ontology = "http://www.w3.org/2002/07/owl#Ontology";

inline constexpr const char* genome_rigidity = "http://genome-kit.org/ns#rigidity";
inline constexpr const char* genome_primary_definition = "http://genome-kit.org/ns#primaryDefinition";
inline constexpr const char* genome_coverage_percent = "http://genome-kit.org/ns#coveragePercent";
inline constexpr const char* genome_iteration_count = "http://genome-kit.org/ns#iterationCount";
inline constexpr const char* genome_exported_at = "http://genome-kit.org/ns#exportedAt";

inline Term type() { return Term::iri(rdf_type); }
inline Term subclass_of() { return Term::iri(rdfs_subclass_of); }
inline Term subproperty_of() { return Term::iri(rdfs_subproperty_of); }
inline Term domain() { return Term::iri(rdfs_domain); }
inline Term range() { return Term::iri(rdfs_range); }
inline Term label() { return Term::iri(rdfs_label); }

}  // namespace genome::vocab
