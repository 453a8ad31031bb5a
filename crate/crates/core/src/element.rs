use std::fmt;
use std::sync::Arc;

/// A symbolic value: an atomic label, an ordered pair, or a flat tuple.
///
/// Pairs record how composite apexes were built (pullbacks and products);
/// tuples only appear in the normal forms produced by span flattening and in
/// nerve levels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Atom(Arc<str>),
    Pair(Arc<(Element, Element)>),
    Tuple(Arc<[Element]>),
}

impl Element {
    pub fn atom(label: impl AsRef<str>) -> Self {
        Element::Atom(Arc::from(label.as_ref()))
    }

    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Arc::new((a, b)))
    }

    pub fn tuple(items: impl IntoIterator<Item = Element>) -> Self {
        Element::Tuple(items.into_iter().collect::<Vec<_>>().into())
    }

    /// The point of the chosen terminal set.
    pub fn star() -> Self {
        Element::atom("*")
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Element::Atom(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Element, &Element)> {
        match self {
            Element::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[Element]> {
        match self {
            Element::Tuple(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Element::Atom(_))
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Element::Pair(_))
    }

    /// First component of a pair.
    pub fn fst(&self) -> Option<&Element> {
        self.as_pair().map(|(a, _)| a)
    }

    /// Second component of a pair.
    pub fn snd(&self) -> Option<&Element> {
        self.as_pair().map(|(_, b)| b)
    }
}

impl From<&str> for Element {
    fn from(s: &str) -> Self {
        Element::atom(s)
    }
}

impl From<String> for Element {
    fn from(s: String) -> Self {
        Element::Atom(Arc::from(s))
    }
}

impl<A: Into<Element>, B: Into<Element>> From<(A, B)> for Element {
    fn from((a, b): (A, B)) -> Self {
        Element::pair(a.into(), b.into())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Atom(s) => f.write_str(s),
            Element::Pair(p) => write!(f, "({},{})", p.0, p.1),
            Element::Tuple(t) => {
                f.write_str("<")?;
                for (i, e) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(">")
            }
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
