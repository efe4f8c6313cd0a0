//! Standard W3C namespaces used by the parsers and serializers.

pub mod rdf {
    use crate::rdf::Iri;

    pub const NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
    pub const REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
    pub const NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
    pub const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

    pub fn type_() -> Iri {
        Iri::from_static(TYPE)
    }
    pub fn first() -> Iri {
        Iri::from_static(FIRST)
    }
    pub fn rest() -> Iri {
        Iri::from_static(REST)
    }
    pub fn nil() -> Iri {
        Iri::from_static(NIL)
    }
    pub fn lang_string() -> Iri {
        Iri::from_static(LANG_STRING)
    }
}

pub mod xsd {
    use crate::rdf::Iri;

    pub const NS: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
    pub const BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
    pub const DATE: &str = "http://www.w3.org/2001/XMLSchema#date";
    pub const DATE_TIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";

    /// Datatypes whose lexical space is a subset of the integers.
    pub const INTEGER_TYPES: &[&str] = &[
        INTEGER,
        "http://www.w3.org/2001/XMLSchema#nonNegativeInteger",
        "http://www.w3.org/2001/XMLSchema#positiveInteger",
        "http://www.w3.org/2001/XMLSchema#long",
        "http://www.w3.org/2001/XMLSchema#int",
        "http://www.w3.org/2001/XMLSchema#short",
        "http://www.w3.org/2001/XMLSchema#unsignedLong",
        "http://www.w3.org/2001/XMLSchema#unsignedInt",
    ];

    pub fn string() -> Iri {
        Iri::from_static(STRING)
    }
    pub fn integer() -> Iri {
        Iri::from_static(INTEGER)
    }
    pub fn decimal() -> Iri {
        Iri::from_static(DECIMAL)
    }
    pub fn double() -> Iri {
        Iri::from_static(DOUBLE)
    }
    pub fn boolean() -> Iri {
        Iri::from_static(BOOLEAN)
    }
    pub fn date() -> Iri {
        Iri::from_static(DATE)
    }
}
